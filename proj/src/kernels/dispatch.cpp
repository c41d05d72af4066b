#include "smad/kernels/dense.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace smad::kernels {

namespace {

struct Table {
    decltype(&scalar::matmul) matmul;
    decltype(&scalar::add_row_bias) add_row_bias;
    decltype(&scalar::column_sums) column_sums;
    decltype(&scalar::tanh_inplace) tanh_inplace;
    decltype(&scalar::tanh_backward) tanh_backward;
    decltype(&scalar::dot) dot;
};

constexpr Table kScalar{scalar::matmul,       scalar::add_row_bias,  scalar::column_sums,
                        scalar::tanh_inplace, scalar::tanh_backward, scalar::dot};
constexpr Table kAvx2{avx2::matmul,       avx2::add_row_bias,  avx2::column_sums,
                      avx2::tanh_inplace, avx2::tanh_backward, avx2::dot};
constexpr Table kAvx512{avx512::matmul,       avx512::add_row_bias,  avx512::column_sums,
                        avx512::tanh_inplace, avx512::tanh_backward, avx512::dot};

bool cpu_supports(Backend backend) noexcept {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    switch (backend) {
    case Backend::Scalar:
        return true;
    case Backend::Avx2:
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    case Backend::Avx512:
        return __builtin_cpu_supports("avx512f") && __builtin_cpu_supports("fma");
    }
    return false;
#else
    return backend == Backend::Scalar;
#endif
}

const Table& table_for(Backend backend) {
    switch (backend) {
    case Backend::Avx2:
        return kAvx2;
    case Backend::Avx512:
        return kAvx512;
    case Backend::Scalar:
        break;
    }
    return kScalar;
}

Backend widest_available() {
    if (cpu_supports(Backend::Avx512)) {
        return Backend::Avx512;
    }
    return cpu_supports(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

Backend initial_backend() {
    if (const char* env = std::getenv("SMAD_KERNELS")) {
        const Backend requested = parse_backend(env);
        if (!cpu_supports(requested)) {
            throw std::runtime_error("SMAD_KERNELS=" + std::string(env) + " is not supported by this CPU");
        }
        return requested;
    }
    return widest_available();
}

struct State {
    Backend backend;
    const Table* table;
};

State& state() {
    static State current = [] {
        const Backend backend = initial_backend();
        return State{backend, &table_for(backend)};
    }();
    return current;
}

} // namespace

std::string_view to_string(Backend backend) {
    switch (backend) {
    case Backend::Avx2:
        return "avx2";
    case Backend::Avx512:
        return "avx512";
    case Backend::Scalar:
        break;
    }
    return "scalar";
}

Backend parse_backend(std::string_view name) {
    if (name == "scalar") {
        return Backend::Scalar;
    }
    if (name == "avx2") {
        return Backend::Avx2;
    }
    if (name == "avx512") {
        return Backend::Avx512;
    }
    throw std::invalid_argument("unknown kernel backend '" + std::string(name) + "'");
}

bool backend_available(Backend backend) noexcept {
    return cpu_supports(backend);
}

Backend active_backend() noexcept {
    return state().backend;
}

void set_backend(Backend backend) {
    if (!cpu_supports(backend)) {
        throw std::runtime_error("kernel backend " + std::string(to_string(backend)) + " is not supported by this CPU");
    }
    state() = State{backend, &table_for(backend)};
}

void matmul(const double* a, std::size_t rs, std::size_t cs, const double* b, double* c, std::size_t n, std::size_t k,
            std::size_t m, bool accumulate) {
    state().table->matmul(a, rs, cs, b, c, n, k, m, accumulate);
}

void add_row_bias(double* c, const double* bias, std::size_t n, std::size_t m) {
    state().table->add_row_bias(c, bias, n, m);
}

void column_sums(const double* a, std::size_t n, std::size_t m, double* out) {
    state().table->column_sums(a, n, m, out);
}

void tanh_inplace(double* x, std::size_t count) {
    state().table->tanh_inplace(x, count);
}

void tanh_backward(double* grad, const double* t, std::size_t count) {
    state().table->tanh_backward(grad, t, count);
}

double dot(const double* x, const double* y, std::size_t count) {
    return state().table->dot(x, y, count);
}

} // namespace smad::kernels
