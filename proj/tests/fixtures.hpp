#pragma once

// Reference data shared by the unit and acceptance tests.

namespace kclans::fixtures {

// top coefficient of the Chern-Mather class of X_(1,2,1,2), at w = 4321
inline constexpr const char* kTopCoefficient1212 =
    "a1^3 a2^2 a3 + a1^3 a2^2 + a1^3 a2 a3^2 + 3 a1^3 a2 a3 + 2 a1^3 a2 + a1^3 a3^2 + 2 a1^3 a3 + a1^3"
    " + 2 a1^2 a2^3 a3 + 2 a1^2 a2^3 + 3 a1^2 a2^2 a3^2 + 9 a1^2 a2^2 a3 + 6 a1^2 a2^2 + a1^2 a2 a3^3"
    " + 7 a1^2 a2 a3^2 + 12 a1^2 a2 a3 + 6 a1^2 a2 + a1^2 a3^3 + 4 a1^2 a3^2 + 5 a1^2 a3 + 2 a1^2"
    " + a1 a2^4 a3 + a1 a2^4 + 2 a1 a2^3 a3^2 + 7 a1 a2^3 a3 + 5 a1 a2^3 + a1 a2^2 a3^3 + 9 a1 a2^2 a3^2"
    " + 16 a1 a2^2 a3 + 8 a1 a2^2 + 3 a1 a2 a3^3 + 12 a1 a2 a3^2 + 14 a1 a2 a3 + 5 a1 a2 + 2 a1 a3^3"
    " + 5 a1 a3^2 + 4 a1 a3 + a1 + a2^4 a3 + a2^4 + 2 a2^3 a3^2 + 5 a2^3 a3 + 3 a2^3 + a2^2 a3^3"
    " + 6 a2^2 a3^2 + 8 a2^2 a3 + 3 a2^2 + 2 a2 a3^3 + 6 a2 a3^2 + 5 a2 a3 + a2 + a3^3 + 2 a3^2 + a3";

}  // namespace kclans::fixtures
