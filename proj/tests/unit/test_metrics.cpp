#include "smad/errors.hpp"
#include "smad/metrics.hpp"

#include "../oracle/brute_force.hpp"
#include "../support/builders.hpp"
#include "../support/random_system.hpp"

#include <doctest.h>

using namespace smad;
using namespace smad::testing;

namespace {

SystemModel jaccard_model() {
    // S(A#p) = {a, b}, S(A#q) = {b, c}, S(A#r) = {a, b}
    return SystemModel::build(
        "s", {klass("A", {attr("a"), attr("b"), attr("c")},
                    {method("p()", {reads("A#a"), reads("A#b")}), method("q()", {reads("A#b"), reads("A#c")}),
                     method("r()", {reads("A#a"), reads("A#b", 4)}), method("e()"), method("f()")}),
              klass("B", {attr("x")}, {method("u()", {reads("A#a"), reads("B#x")})})});
}

} // namespace

TEST_CASE("jaccard distance between entities") {
    const SystemModel model = jaccard_model();
    CHECK(jaccard_entity("A#p()", "A#r()", model) == 0.0);
    CHECK(jaccard_entity("A#p()", "A#q()", model) == doctest::Approx(2.0 / 3.0));
    CHECK(jaccard_entity("A#e()", "A#f()", model) == 1.0);
    CHECK(jaccard_entity("A#q()", "B#u()", model) == 1.0);
    CHECK_THROWS_AS(jaccard_entity("A#p()", "A#zzz()", model), LookupError);
}

TEST_CASE("jaccard distance between an entity and a class") {
    const SystemModel model = SystemModel::build(
        "s", {klass("C", {attr("a1")}, {method("m2()"), method("e()")}),
              klass("D", {}, {method("all()", {reads("C#a1")}, {calls("C#m2()")}),
                              method("half()", {reads("C#a1")}, {calls("D#all()")}), method("none()")})});
    // members of C: {a1, m2, e}
    CHECK(jaccard_entity_class("D#all()", "C", model) == doctest::Approx(1.0 - 2.0 / 3.0));
    CHECK(jaccard_entity_class("D#half()", "C", model) == doctest::Approx(1.0 - 1.0 / 4.0));
    CHECK(jaccard_entity_class("D#none()", "C", model) == 1.0);
    const SystemModel exact = SystemModel::build(
        "s", {klass("C", {attr("a1")}, {method("m2()")}),
              klass("D", {}, {method("all()", {reads("C#a1")}, {calls("C#m2()")})})});
    CHECK(jaccard_entity_class("D#all()", "C", exact) == 0.0);
}

TEST_CASE("LCOM5") {
    const SystemModel model = SystemModel::build(
        "s", {klass("NoAttr", {}, {method("a()"), method("b()")}),
              klass("Split", {attr("x"), attr("y")}, {method("a()", {reads("Split#x")}), method("b()", {reads("Split#y")})}),
              klass("Tight", {attr("x"), attr("y")},
                    {method("a()", {reads("Tight#x"), reads("Tight#y")}), method("b()", {reads("Tight#x"), writes("Tight#y")})}),
              klass("Lonely", {attr("x")}, {method("a()")})});
    const Lexicon lexicon = Lexicon::controller_default();
    CHECK(class_profile("NoAttr", model, lexicon).lcom5 == 0.0);
    CHECK(class_profile("Split", model, lexicon).lcom5 == doctest::Approx(1.0));
    CHECK(class_profile("Tight", model, lexicon).lcom5 == 0.0);
    CHECK(class_profile("Lonely", model, lexicon).lcom5 == 0.0);
}

TEST_CASE("class profile counts and controller names") {
    const SystemModel model = SystemModel::build(
        "s", {klass("x.DataProcessorController", {attr("a")}, {method("getA()", {reads("x.DataProcessorController#a")})}),
              klass("x.Processing", {}, {}), klass("x.HTTPRequestHandler2", {}, {})});
    const Lexicon lexicon = Lexicon::controller_default();
    const ClassStructuralProfile p = class_profile("x.DataProcessorController", model, lexicon);
    CHECK(p.nmd == 1);
    CHECK(p.nad == 1);
    CHECK(p.accessor_count == 1);
    CHECK(p.is_controller);
    CHECK_FALSE(class_profile("x.Processing", model, lexicon).is_controller);
    CHECK(class_profile("x.HTTPRequestHandler2", model, lexicon).is_controller);
    CHECK(split_identifier("x.HTTPRequestHandler2") == std::vector<std::string>{"HTTP", "Request", "Handler", "2"});
    CHECK(is_controller_name("commandBus", lexicon));
    CHECK_THROWS_AS(class_profile("x.Missing", model, lexicon), LookupError);
}

TEST_CASE("InCode metrics") {
    const SystemModel model = SystemModel::build(
        "s", {klass("A", {attr("own")},
                    {method("none()"), method("envy()", {reads("B#x", 2), reads("B#y"), reads("A#own")}),
                     method("two()", {reads("B#x"), reads("C#z")})}),
              klass("B", {attr("x"), attr("y")}, {}), klass("C", {attr("z")}, {})});
    InCodeMetrics none = incode_metrics("A#none()", "B", model);
    CHECK(none.atfd == 0);
    CHECK(none.laa == 0.0);
    CHECK(none.fdp == 0);
    InCodeMetrics envy = incode_metrics("A#envy()", "B", model);
    CHECK(envy.atfd == 2);
    CHECK(envy.laa == doctest::Approx(0.75));
    CHECK(envy.fdp == 1);
    CHECK(incode_metrics("A#two()", "B", model).fdp == 2);
    CHECK(incode_metrics("A#two()", "C", model).fdp == 2);
    CHECK_THROWS_AS(incode_metrics("A#envy()", "A", model), std::invalid_argument);
}

TEST_CASE("system threshold") {
    const std::vector<double> fours{4, 4, 4};
    const std::vector<double> zeros{0, 0, 0, 0};
    const std::vector<double> two_four{2, 4};
    CHECK(system_threshold(fours) == 4.0);
    CHECK(system_threshold(zeros) == 1.0);
    CHECK(system_threshold(two_four) == doctest::Approx(4.5));
    CHECK_THROWS_AS(system_threshold(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("metrics agree with brute force on random systems") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const RandomSystem rs = random_system(seed);
        const brute::World world(rs.declarations);
        const Lexicon lexicon = Lexicon::controller_default();
        for (const ClassDecl& cls : rs.model.classes()) {
            const ClassStructuralProfile p = class_profile(cls.qualified_name, rs.model, lexicon);
            CHECK(p.lcom5 == doctest::Approx(brute::lcom5(world, cls.qualified_name)));
            CHECK(p.accessor_count == brute::accessor_count(world, cls.qualified_name));
            CHECK(p.is_controller == brute::is_controller(cls.qualified_name, brute::RuleCardParams{}.controller_words));
            for (const MethodDecl& m : cls.methods) {
                CHECK(jaccard_entity_class(m.entity_id, cls.qualified_name, rs.model) ==
                      doctest::Approx(brute::jaccard_entity_class(world, m.entity_id, cls.qualified_name)));
                for (const MethodDecl& n : cls.methods) {
                    const double d = jaccard_entity(m.entity_id, n.entity_id, rs.model);
                    CHECK(d == doctest::Approx(
                                   brute::jaccard(brute::entity_set(world, m.entity_id), brute::entity_set(world, n.entity_id))));
                    CHECK(d == jaccard_entity(n.entity_id, m.entity_id, rs.model));
                }
            }
        }
    }
}
