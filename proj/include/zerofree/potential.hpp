#pragma once

#include <vector>

#include "zerofree/model.hpp"

namespace zf {

// phi(z) = ln((gamma z + 1)/(z + beta)), principal branch.
// Throws Errc::branch_cut within 1e-9 of the excluded real segment.
cplx phi(const SpinParams& p, const Ratio& z);
inline cplx phi(const SpinParams& p, cplx z) { return phi(p, Ratio::of(z)); }

// phi^{-1}(w) = (beta e^w - 1)/(gamma - e^w); requires |Im w| < pi.
Ratio phi_inv(const SpinParams& p, cplx w);

// phi(lambda e^{d w}).
cplx g_map(const SpinParams& p, cplx lambda, int d, cplx w);

// ln((gamma lambda e^{sum w} + 1)/(lambda e^{sum w} + beta)).
cplx f_phi(const SpinParams& p, cplx lambda, const std::vector<cplx>& ws);

struct RH {
    double r = 0.0;
    double h = 0.0;  // |Im|
};
// Real part and |Im| of phi(lambda e^{x + i y}) in closed form.
RH rh_closed_form(const SpinParams& p, double lambda, double x, double y);

// d = Delta - 1 throughout.
double G_func(const SpinParams& p, double lambda, double x0, double x1, double k, double x);
double H_func(const SpinParams& p, double lambda, double x0, double x);
double Hhat_rect(const SpinParams& p, double lambda, double x);
// 1 - d|sqrt(bg) - 1|/(1 + sqrt(bg)).
double Hhat_lower_bound(const SpinParams& p);

}  // namespace zf
