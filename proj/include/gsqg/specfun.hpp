#pragma once

#include "gsqg/series.hpp"

namespace gsqg {

// Gamma function; DomainError at the poles 0, -1, -2, ...
double gamma_fn(double x);

// 1/Gamma(x), entire: returns 0 at the poles.
double rgamma(double x);

// Rising factorial (a)_m = a(a+1)...(a+m-1), (a)_0 = 1.
double pochhammer(double a, int m);

struct Hyp2F1Args {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    double z = 0.0;

    void validate() const;
};

// Gauss 2F1 on z in [0,1]: power series for z < 1, Gauss summation at z = 1.
double hyp2f1(const Hyp2F1Args& args, const SeriesControl& ctrl = {});
SeriesResult hyp2f1_series(const Hyp2F1Args& args, const SeriesControl& ctrl = {});

// A(beta) = Gamma((3-beta)/2) / (sqrt(pi) Gamma(2-beta/2)), beta in (0,2).
double a_beta(double beta);

// sum_{m>=0} (beta/2)_m (1/2)_m / (m!)^2 / (2m+2); converges to a_beta.
SeriesResult series_A(double beta, const SeriesControl& ctrl = {});

// sum_{m>=0} (beta/2)_m (1/2)_m / (m!)^2 / (2m+beta-2); converges to A(beta)/(beta-2).
// beta in (0,2); the m = 0 term is 1/(beta-2).
SeriesResult series_soma(double beta, const SeriesControl& ctrl = {});

// A(beta)/(beta-2) written with Gamma((4-beta)/2) in the denominator.
double soma_closed_form(double beta);

// Incomplete Beta B_x(a,b) = x^a/a * 2F1(a, 1-b; a+1; x), x in (0,1], a > 0.
double inc_beta(double x, double a, double b, const SeriesControl& ctrl = {});

}  // namespace gsqg
