#pragma once

namespace splitlab {

// Exact traveling front of u_t = u_xx + u(1-u):
//   u(t,x) = (1 + k*exp(-(5/6)t + direction*x/sqrt(6)))^-2,  k > 0.
// Values lie in (0,1); for direction +1 the front decays to the right.
double wave_exact(double x, double t, double k, double direction);

// Time derivative of wave_exact, used for time-dependent boundary rows.
double wave_exact_dt(double x, double t, double k, double direction);

} // namespace splitlab
