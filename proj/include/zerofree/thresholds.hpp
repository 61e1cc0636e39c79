#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "zerofree/model.hpp"

namespace zf {

enum class Sign { positive, negative };

enum class CaseId { case1 = 1, case2 = 2, case3 = 3, case4 = 4, rect, unbounded1, unbounded2 };

const char* case_name(CaseId c);

// Bracketed bisection: f(lo) and f(hi) must have opposite signs.
// Stops when the bracket is below tol (absolute) or after max_iter halvings.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-12,
              int max_iter = 200);

double bar_d(double beta, double gamma);
double hat_x(double beta, double gamma, double d);
double lambda_c_at(double beta, double gamma, double d);

struct DcResult {
    double x_c = 0.0;
    double d_c = 0.0;
};
// psi(x) = 2(1-bg)x/(b-gx^2) + ln((gx+1)/(x+b)); its zero determines the minimizer d_c of lambda_c.
double dc_balance(double beta, double gamma, double x);
DcResult find_dc(double beta, double gamma);

double check_x(double beta, double gamma, double d);

struct BoundResult {
    CaseId case_id = CaseId::case1;
    double bound = 0.0;
    std::string note;
};
// Bounded-degree activity bound; throws Errc::case_mismatch for the rectangle band or beta*gamma == 1.
BoundResult bounded_lambda_bound(const SpinParams& p, Sign sign);
// True when (Delta-2)/Delta < sqrt(bg) < Delta/(Delta-2) and bg != 1.
bool in_rect_band(const SpinParams& p);
// Degree-free bound; throws Errc::regime_mismatch outside (bg>1, g<=1) and (bg<1, b>1).
BoundResult unbounded_lambda_bound(double beta, double gamma, Sign sign);

struct ThresholdReport {
    double beta = 0.0, gamma = 0.0;
    int delta = 0;
    Sign sign = Sign::positive;
    std::optional<double> bar_d;
    std::map<int, double> hat_x;
    std::map<int, double> lambda_c;
    std::optional<double> x_c;
    std::optional<double> d_c;
    std::map<int, double> check_x;
    std::string case_id;
    std::optional<double> lambda_bound;
    std::string note;
};
ThresholdReport threshold_report(const SpinParams& p, Sign sign);

// psi(y) = ln(1+y)/y on (0, inf), decreasing from 1 to 0.
double psi_setcover(double y);
double psi_setcover_inv(double t);

struct MuBounds {
    double mu1 = 0.0;
    double mu2 = 0.0;
};
MuBounds setcover_mu_bounds(int delta);

struct SetCoverThresholdReport {
    int delta = 0;
    double mu = 0.0;
    double mu1 = 0.0, mu2 = 0.0;
    int condition = 1;  // 1: all eta, 2: eta < eta1, 3: eta < eta2
    std::optional<double> eta1, eta2, xStar1, xStar2;
};
SetCoverThresholdReport setcover_report(int delta, double mu);
// Throws Errc::domain when mu lies in [mu2, mu1].
double setcover_eta_bound(int delta, double mu);

}  // namespace zf
