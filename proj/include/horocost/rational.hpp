#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace horocost {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace horocost
