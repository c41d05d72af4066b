#pragma once

#include <cstdint>
#include <optional>
#include <span>

namespace smad {

struct ConfusionMatrix {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t n_pos() const noexcept { return tp + fn; }
    std::int64_t n_neg() const noexcept { return fp + tn; }
    std::int64_t m_pos() const noexcept { return tp + fp; }
    std::int64_t m_neg() const noexcept { return fn + tn; }
    std::int64_t n() const noexcept { return tp + fp + fn + tn; }

    void add(bool predicted, bool actual) noexcept;
    ConfusionMatrix& operator+=(const ConfusionMatrix& other) noexcept;
    bool operator==(const ConfusionMatrix&) const = default;
};

/// Throws std::invalid_argument when the spans differ in length.
ConfusionMatrix confusion_from(std::span<const bool> predicted, std::span<const bool> actual);

/// Precision is absent when nothing was predicted positive, recall when there
/// are no positives. MCC is 0 whenever its denominator vanishes.
struct Scores {
    std::optional<double> precision;
    std::optional<double> recall;
    double mcc = 0.0;
};

/// Throws std::invalid_argument for an empty matrix or negative counts.
Scores scores(const ConfusionMatrix& matrix);
double mcc(const ConfusionMatrix& matrix);

} // namespace smad
