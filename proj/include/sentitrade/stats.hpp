#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sentitrade/signal.hpp"

namespace sentitrade::stats {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct RegressionSummary {
    std::size_t n = 0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double p_value = 1.0;  // two-sided slope t-test, n-2 degrees of freedom
};

/// Regularized incomplete beta I_x(a, b), evaluated by continued fraction.
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability of Student's t with `df` degrees of freedom.
double student_t_two_sided(double t, double df);

/// Least-squares line through `points`. Throws for n < 3 or a constant x.
RegressionSummary ols_fit(std::span<const Point> points);

/// Keeps points with |x| >= radius, in order.
std::vector<Point> filtered_pairs(std::span<const Point> points, double exclusion_radius);

enum class Regressor {
    Svc,             // x = SVC
    DeltaSentiment,  // x = day-over-day mean sentiment change
};

Regressor parse_regressor(std::string_view text);
std::string_view to_string(Regressor r);

struct LabeledPoint {
    Ticker ticker;
    Date date;
    Point point;
};

struct CorrelationResult {
    RegressionSummary summary;
    std::vector<LabeledPoint> points;  // the full cloud before filtering
};

/// Pools (signal, forward return) pairs over every ticker and every trading
/// day that has the required forward bars (the zeroed first day is skipped),
/// drops pairs with |x| < exclusion_radius and fits OLS on the rest.
/// `signals[i]` and `prices[i]` describe the same ticker.
CorrelationResult correlation_experiment(std::span<const std::vector<signal::DailySignal>> signals,
                                         std::span<const PriceSeries> prices, const TradingCalendar& calendar,
                                         signal::Lag lag, Regressor regressor, double exclusion_radius);

void write_points(const std::filesystem::path& path, std::span<const LabeledPoint> points);
void write_summary(const std::filesystem::path& path, const RegressionSummary& s);

}  // namespace sentitrade::stats
