#pragma once

namespace rwqc::series {

// Closed-form tails of geometric sums with polynomial factors, all over j > n
// for x in [0, 1):
//   tail_geom    = sum x^j
//   tail_geom_j  = sum j x^j
//   tail_geom_j2 = sum j^2 x^j
double tail_geom(double x, long long n);
double tail_geom_j(double x, long long n);
double tail_geom_j2(double x, long long n);

}  // namespace rwqc::series
