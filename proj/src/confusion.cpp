#include "smad/confusion.hpp"

#include <cmath>
#include <stdexcept>

namespace smad {

void ConfusionMatrix::add(bool predicted, bool actual) noexcept {
    if (actual) {
        ++(predicted ? tp : fn);
    } else {
        ++(predicted ? fp : tn);
    }
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) noexcept {
    tp += other.tp;
    fp += other.fp;
    fn += other.fn;
    tn += other.tn;
    return *this;
}

ConfusionMatrix confusion_from(std::span<const bool> predicted, std::span<const bool> actual) {
    if (predicted.size() != actual.size()) {
        throw std::invalid_argument("prediction and label counts differ");
    }
    ConfusionMatrix matrix;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        matrix.add(predicted[i], actual[i]);
    }
    return matrix;
}

double mcc(const ConfusionMatrix& m) {
    const double denominator = static_cast<double>(m.n_pos()) * static_cast<double>(m.m_pos()) *
                               static_cast<double>(m.n_neg()) * static_cast<double>(m.m_neg());
    if (denominator == 0.0) {
        return 0.0;
    }
    const double numerator = static_cast<double>(m.tp) * static_cast<double>(m.n()) -
                             static_cast<double>(m.n_pos()) * static_cast<double>(m.m_pos());
    return numerator / std::sqrt(denominator);
}

Scores scores(const ConfusionMatrix& m) {
    if (m.tp < 0 || m.fp < 0 || m.fn < 0 || m.tn < 0) {
        throw std::invalid_argument("confusion counts must be non-negative");
    }
    if (m.n() == 0) {
        throw std::invalid_argument("cannot score an empty confusion matrix");
    }
    Scores s;
    if (m.m_pos() > 0) {
        s.precision = static_cast<double>(m.tp) / static_cast<double>(m.m_pos());
    }
    if (m.n_pos() > 0) {
        s.recall = static_cast<double>(m.tp) / static_cast<double>(m.n_pos());
    }
    s.mcc = mcc(m);
    return s;
}

} // namespace smad
