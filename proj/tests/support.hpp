#pragma once

#include <initializer_list>
#include <string>
#include <tuple>

#include <gtest/gtest.h>

#include "air/exactgeom.hpp"
#include "air/matrix.hpp"

namespace air::test {

inline Rational Q(const char* s) { return parse_rational(s); }

inline PointConfig make_config(std::initializer_list<std::tuple<const char*, const char*, const char*>> pts) {
    PointConfig c;
    for (const auto& [label, x, y] : pts) c.add(label, Point{Q(x), Q(y)});
    return c;
}

/// CFG3b: w1 = 0, w2 = 2 + i, w3 = 1 − 3i.
inline PointConfig cfg3b() { return make_config({{"w1", "0", "0"}, {"w2", "2", "1"}, {"w3", "1", "-3"}}); }

inline Matrix M(std::size_t r, std::size_t c, std::initializer_list<const char*> entries) {
    std::vector<Rational> d;
    for (auto e : entries) d.push_back(Q(e));
    return Matrix(r, c, d);
}

/// Expects `f` to throw air::Error with the given code.
template <class F>
void expect_error(const std::string& code, F&& f) {
    try {
        f();
        ADD_FAILURE() << "expected error " << code;
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace air::test
