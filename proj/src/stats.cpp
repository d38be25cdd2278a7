#include "sentitrade/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "sentitrade/csv.hpp"

namespace sentitrade::stats {

namespace {

// Relative step tolerance; keeps the absolute error of I_x(a,b) well under 1e-12.
constexpr double kBetaStepTolerance = 1e-15;
constexpr int kBetaMaxIterations = 10000;

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kBetaStepTolerance) return h;
    }
    throw Error("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error("incomplete_beta: shape parameters must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw Error("incomplete_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    // The fraction converges fast only on one side of the mean; use symmetry on the other.
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided(double t, double df) {
    if (!(df > 0.0)) throw Error("student_t_two_sided: degrees of freedom must be positive");
    if (std::isnan(t)) throw Error("student_t_two_sided: t is NaN");
    if (std::isinf(t)) return 0.0;
    const double x = df / (df + t * t);
    return std::clamp(incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

RegressionSummary ols_fit(std::span<const Point> points) {
    const std::size_t n = points.size();
    if (n < 3) throw Error("ols_fit: need at least 3 points, got " + std::to_string(n));

    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : points) {
        const double dx = p.x - mx;
        const double dy = p.y - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw Error("ols_fit: degenerate predictor (all x identical)");

    RegressionSummary s;
    s.n = n;
    s.slope = sxy / sxx;
    s.intercept = my - s.slope * mx;

    double ss_res = 0.0;
    for (const auto& p : points) {
        const double r = p.y - (s.intercept + s.slope * p.x);
        ss_res += r * r;
    }
    s.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 0.0;

    const double df = static_cast<double>(n - 2);
    if (s.slope == 0.0) {
        s.p_value = 1.0;
    } else if (ss_res == 0.0) {
        s.p_value = 0.0;
    } else {
        const double se = std::sqrt(ss_res / df / sxx);
        s.p_value = student_t_two_sided(s.slope / se, df);
    }
    return s;
}

std::vector<Point> filtered_pairs(std::span<const Point> points, double exclusion_radius) {
    if (!(exclusion_radius >= 0.0)) throw Error("filtered_pairs: radius must be non-negative");
    std::vector<Point> out;
    out.reserve(points.size());
    std::copy_if(points.begin(), points.end(), std::back_inserter(out),
                 [&](const Point& p) { return std::abs(p.x) >= exclusion_radius; });
    return out;
}

Regressor parse_regressor(std::string_view text) {
    if (text == "svc") return Regressor::Svc;
    if (text == "sentiment") return Regressor::DeltaSentiment;
    throw Error("unknown regressor '" + std::string(text) + "' (expected svc or sentiment)");
}

std::string_view to_string(Regressor r) {
    return r == Regressor::Svc ? "svc" : "sentiment";
}

CorrelationResult correlation_experiment(std::span<const std::vector<signal::DailySignal>> signals,
                                         std::span<const PriceSeries> prices, const TradingCalendar& calendar,
                                         signal::Lag lag, Regressor regressor, double exclusion_radius) {
    if (signals.size() != prices.size()) {
        throw Error("correlation_experiment: signal and price ticker counts differ");
    }
    const std::size_t ahead = lag == signal::Lag::NextDay ? 1 : 2;

    CorrelationResult out;
    for (std::size_t t = 0; t < signals.size(); ++t) {
        const auto series = signal::restrict_to(signals[t], calendar);
        for (std::size_t i = 1; i + ahead < calendar.size(); ++i) {
            const auto& s = series[i];
            const double x = regressor == Regressor::Svc ? s.svc : s.delta_sentiment;
            const double y = signal::forward_return(prices[t], calendar, s.date, lag);
            out.points.push_back({s.ticker, s.date, {x, y}});
        }
    }

    std::vector<Point> raw;
    raw.reserve(out.points.size());
    for (const auto& lp : out.points) raw.push_back(lp.point);
    const auto kept = filtered_pairs(raw, exclusion_radius);
    if (kept.size() < 3) {
        throw Error("correlation_experiment: only " + std::to_string(kept.size()) +
                    " pairs survive the exclusion radius (need 3)");
    }
    out.summary = ols_fit(kept);
    return out;
}

void write_points(const std::filesystem::path& path, std::span<const LabeledPoint> points) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "ticker,date,x,y\n";
    for (const auto& p : points) {
        out << csv::join({p.ticker, format_date(p.date), format_number(p.point.x), format_number(p.point.y)})
            << '\n';
    }
}

void write_summary(const std::filesystem::path& path, const RegressionSummary& s) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "n,slope,intercept,r_squared,p_value\n";
    out << csv::join({std::to_string(s.n), format_number(s.slope), format_number(s.intercept),
                      format_number(s.r_squared), format_number(s.p_value)})
        << '\n';
}

}  // namespace sentitrade::stats
