#include "tppp/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace tppp {

double gamma_pair(double q) {
    if (q == 0) return 1.0;
    return M_PI * q / std::sin(M_PI * q);
}

Complex lgamma_complex(Complex z) {
    static const double g = 7;
    static const double coef[9] = {
        0.99999999999980993,    676.5203681218851,    -1259.1392167224028,
        771.32342877765313,     -176.61502916214059,  12.507343278686905,
        -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // reflection formula
        return std::log(M_PI / std::sin(M_PI * z)) - lgamma_complex(1.0 - z);
    }
    z -= 1.0;
    Complex x = coef[0];
    for (int i = 1; i < 9; ++i) x += coef[i] / (z + double(i));
    Complex t = z + g + 0.5;
    return 0.5 * std::log(2 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(x);
}

Complex hyp2f1(Complex a, double b2, double c, double z) {
    if (z == 1.0) {
        // Gauss summation, valid when Re(c - a - b2) > 0
        Complex num = lgamma_complex(c) + lgamma_complex(Complex(c) - a - b2);
        Complex den = lgamma_complex(Complex(c) - a) + lgamma_complex(Complex(c - b2));
        return std::exp(num - den);
    }
    Complex term = 1.0;
    Complex sum = 1.0;
    int small_terms = 0;
    const int max_terms = 100000;
    for (int k = 0; k < max_terms; ++k) {
        term *= (a + double(k)) * (b2 + k) / ((c + k) * (k + 1)) * z;
        sum += term;
        if (term == Complex(0.0)) return sum; // terminating series
        if (std::abs(term) <= 1e-14 * std::abs(sum)) {
            if (++small_terms >= 2) return sum;
        } else {
            small_terms = 0;
        }
    }
    throw NoConvergence("hyp2f1: series did not converge", sum.real(), sum.imag(),
                        std::abs(term));
}

Complex diversity_gain(Complex b, double p, double q) {
    if (b == Complex(0.0)) return 0.0;
    if (std::abs(b) <= 60.0) {
        return p * b * hyp2f1(1.0 - b, 1.0 - q, 2.0, p);
    }
    // Integral form q Int_0^inf [1 - (1 - p s/(v+s))^b] v^{q-1} dv
    // / (Gamma(1+q) Gamma(1-q)) with s scaled out and v = y^{1/q};
    // stable where the series cancels catastrophically.
    auto f = [&](double y) -> Complex {
        double base = 1.0 - p / (1.0 + std::pow(y, 1.0 / q));
        return 1.0 - std::exp(b * std::log(base));
    };
    Complex integral = quad::integrate_half_line(f, 0.0, 1e-9, 400000);
    return integral / gamma_pair(q);
}

namespace {

// continued fraction for the incomplete beta function (Lentz)
double betacf(double a, double b, double x) {
    const double eps = 1e-15;
    const double fpmin = 1e-300;
    double qab = a + b, qap = a + 1, qam = a - 1;
    double c = 1, d = 1 - qab * x / qap;
    if (std::abs(d) < fpmin) d = fpmin;
    d = 1 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (std::abs(d) < fpmin) d = fpmin;
        c = 1 + aa / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h;
}

} // namespace

double reg_inc_beta(double x, double a, double b) {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1) / (a + b + 2))
        return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1 - x) / b;
}

double brent_root(const std::function<double(double)>& f, double lo, double hi,
                  double tol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0) return a;
    if (fb == 0) return b;
    if (fa * fb > 0)
        throw NoSignChange("brent_root: f(lo) and f(hi) have the same sign");
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2 * 2.22e-16 * std::abs(b) + 0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0 || std::abs(fb) < tol * 1e-3) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2 * xm * s;
                q = 1 - s;
            } else {
                double r = fb / fc;
                q = fa / fc;
                p = s * (2 * xm * q * (q - r) - (b - a) * (r - 1));
                q = (q - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2 * p < std::min(3 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

double gil_pelaez(const std::function<Complex(double)>& moment_fn, double x,
                  double tol) {
    x = std::clamp(x, 1e-6, 1.0 - 1e-6);
    const double L = std::log(x);
    const double abs_l = std::abs(L);
    auto integrand = [&](double t) {
        return std::imag(std::exp(Complex(0, -t * L)) * moment_fn(t)) / t;
    };

    const double h = M_PI / abs_l; // half period of the phase
    const int max_segments = 10000;
    const int window = 12;
    std::vector<double> partial;
    double sum = 0;
    double apex_prev = 0;
    int stable = 0;
    for (int k = 0; k < max_segments; ++k) {
        double seg = quad::integrate(integrand, k * h, (k + 1) * h, tol * 1e-2, 4000);
        sum += seg;
        partial.push_back(sum);
        if ((int)partial.size() > 4 * window)
            partial.erase(partial.begin(), partial.begin() + window);

        int n = std::min<int>(window, partial.size());
        std::vector<double> w(partial.end() - n, partial.end());
        while (w.size() > 1) {
            for (size_t i = 0; i + 1 < w.size(); ++i) w[i] = 0.5 * (w[i] + w[i + 1]);
            w.pop_back();
        }
        double apex = w[0];
        if (k >= 6 && std::abs(apex - apex_prev) < tol * 0.1 * M_PI) {
            if (++stable >= 2)
                return std::clamp(0.5 + apex / M_PI, 0.0, 1.0);
        } else {
            stable = 0;
        }
        apex_prev = apex;
    }
    double value = std::clamp(0.5 + apex_prev / M_PI, 0.0, 1.0);
    throw NoConvergence("gil_pelaez: tail did not settle below tolerance", value,
                        0.0, tol);
}

} // namespace tppp
