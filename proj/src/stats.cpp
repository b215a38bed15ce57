#include "wvcl/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "wvcl/error.hpp"
#include "wvcl/fft.hpp"

namespace wvcl {
namespace {

void require_length(std::span<const double> v, std::size_t n, StatKind kind) {
    if (v.size() < n) {
        throw InvalidInput("stat(" + std::string(to_string(kind)) + "): needs at least " + std::to_string(n) +
                           " values, got " + std::to_string(v.size()));
    }
}

double mean_of(std::span<const double> v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

double central_moment(std::span<const double> v, double mu, int order) {
    double acc = 0.0;
    for (double x : v) {
        const double d = x - mu;
        acc += order == 2 ? d * d : d * d * d;
    }
    return acc / static_cast<double>(v.size());
}

// P25 and P75 by partial selection; avoids a full sort per scalogram row.
double interquartile_range(std::span<const double> v) {
    std::vector<double> work(v.begin(), v.end());
    const double last = static_cast<double>(work.size() - 1);
    const auto at = [&](std::size_t i) { return work.begin() + static_cast<std::ptrdiff_t>(i); };
    // Selects order statistic `lo` searching only [from, end), which must already
    // hold exactly the order statistics from..n-1, then interpolates upward.
    auto quantile = [&](double q, std::size_t from) {
        const double rank = q * last;
        const auto lo = static_cast<std::size_t>(std::floor(rank));
        const double frac = rank - static_cast<double>(lo);
        if (lo >= from) std::nth_element(at(from), at(lo), work.end());
        double value = work[lo];
        if (frac > 0.0) value += frac * (*std::min_element(at(lo + 1), work.end()) - work[lo]);
        return std::pair{value, lo};
    };
    const auto [p25, lo25] = quantile(0.25, 0);
    // When both quartiles share a floor rank (tiny inputs) no reselection is needed.
    const auto [p75, lo75] = quantile(0.75, lo25 + 1);
    (void)lo75;
    return p75 - p25;
}

}  // namespace

std::string_view to_string(StatKind k) {
    switch (k) {
        case StatKind::Mean: return "Mean";
        case StatKind::Variance: return "Variance";
        case StatKind::Skewness: return "Skewness";
        case StatKind::MaxMinRatio: return "MaxMinRatio";
        case StatKind::Iqr: return "Iqr";
    }
    return "?";
}

StatKind stat_kind_from_string(std::string_view name) {
    for (StatKind k : kAllStatKinds) {
        if (to_string(k) == name) return k;
    }
    throw InvalidInput("unknown statistic '" + std::string(name) + "'");
}

StatSet::StatSet(std::initializer_list<StatKind> kinds) {
    for (StatKind k : kinds) insert(k);
}

StatSet StatSet::all() { return {StatKind::Mean, StatKind::Variance, StatKind::Skewness, StatKind::MaxMinRatio, StatKind::Iqr}; }

std::size_t StatSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<StatKind> StatSet::kinds() const {
    std::vector<StatKind> out;
    for (StatKind k : kAllStatKinds) {
        if (contains(k)) out.push_back(k);
    }
    return out;
}

StatSet StatSet::from_mask(std::uint8_t mask) {
    if (mask >= (1u << std::size(kAllStatKinds))) throw InvalidInput("StatSet: invalid mask");
    StatSet s;
    s.mask_ = mask;
    return s;
}

std::string_view to_string(FeatureDomain d) {
    switch (d) {
        case FeatureDomain::Time: return "time";
        case FeatureDomain::Frequency: return "frequency";
        case FeatureDomain::Wavelet: return "wavelet";
    }
    return "?";
}

std::string_view to_string(SampleComponent c) {
    switch (c) {
        case SampleComponent::Magnitude: return "magnitude";
        case SampleComponent::Real: return "real";
        case SampleComponent::Imag: return "imag";
        case SampleComponent::Power: return "power";
    }
    return "?";
}

SampleComponent sample_component_from_string(std::string_view name) {
    for (SampleComponent c :
         {SampleComponent::Magnitude, SampleComponent::Real, SampleComponent::Imag, SampleComponent::Power}) {
        if (to_string(c) == name) return c;
    }
    throw InvalidInput("unknown sample component '" + std::string(name) + "'");
}

double stat(std::span<const double> values, StatKind kind) {
    switch (kind) {
        case StatKind::Mean:
            require_length(values, 1, kind);
            return mean_of(values);
        case StatKind::Variance: {
            require_length(values, 2, kind);
            return central_moment(values, mean_of(values), 2);
        }
        case StatKind::Skewness: {
            require_length(values, 2, kind);
            const double mu = mean_of(values);
            const double m2 = central_moment(values, mu, 2);
            if (m2 <= 1e-30) return 0.0;
            return central_moment(values, mu, 3) / std::pow(m2, 1.5);
        }
        case StatKind::MaxMinRatio: {
            require_length(values, 1, kind);
            const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
            if (*lo == 0.0) throw DegenerateInput("stat(MaxMinRatio): minimum value is zero");
            return *hi / *lo;
        }
        case StatKind::Iqr:
            require_length(values, 2, kind);
            return interquartile_range(values);
    }
    throw InvalidInput("stat: unknown kind");
}

double percentile(std::span<const double> values, double q) {
    if (values.empty()) throw InvalidInput("percentile: empty input");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidInput("percentile: q outside [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double rank = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = static_cast<std::size_t>(std::ceil(rank));
    return sorted[lo] + (rank - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace {

double component_of(const Complex& z, SampleComponent c) {
    switch (c) {
        case SampleComponent::Magnitude: return std::abs(z);
        case SampleComponent::Real: return z.real();
        case SampleComponent::Imag: return z.imag();
        case SampleComponent::Power: return std::norm(z);
    }
    return 0.0;
}

FeatureVector stats_of(const ComplexVector& samples, const StatSet& kinds, SampleComponent component,
                       FeatureDomain domain) {
    RealVector values(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) values[i] = component_of(samples[i], component);
    FeatureVector fv;
    fv.meta.domain = domain;
    for (StatKind k : kinds.kinds()) fv.values.push_back(stat(values, k));
    return fv;
}

}  // namespace

FeatureVector time_domain_features(const ComplexFrame& frame, const StatSet& kinds, SampleComponent component) {
    check_frame(frame, "time_domain_features");
    return stats_of(frame.samples, kinds, component, FeatureDomain::Time);
}

FeatureVector frequency_domain_features(const ComplexFrame& frame, const StatSet& kinds,
                                        SampleComponent component) {
    check_frame(frame, "frequency_domain_features");
    return stats_of(fft::forward(frame.samples), kinds, component, FeatureDomain::Frequency);
}

}  // namespace wvcl
