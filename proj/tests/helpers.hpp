#pragma once

#include <cmath>
#include <span>

#include "doctest.h"
#include "ionchain/errors.hpp"

// Expects a ValidationError carrying exactly `expected`.
#define CHECK_VALIDATION(expr, expected)                                        \
    do {                                                                        \
        bool thrown_ = false;                                                   \
        try {                                                                   \
            (void)(expr);                                                       \
        } catch (const ionchain::ValidationError& e_) {                         \
            thrown_ = true;                                                     \
            CHECK_MESSAGE(e_.code() == (expected), ionchain::to_string(e_.code())); \
        }                                                                       \
        CHECK_MESSAGE(thrown_, "no ValidationError from " #expr);               \
    } while (0)

inline double max_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}
