#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wvcl/types.hpp"

namespace wvcl {

// Declaration order is the canonical concatenation order for composite features.
enum class StatKind : std::uint8_t { Mean, Variance, Skewness, MaxMinRatio, Iqr };

inline constexpr StatKind kAllStatKinds[] = {StatKind::Mean, StatKind::Variance, StatKind::Skewness,
                                             StatKind::MaxMinRatio, StatKind::Iqr};

std::string_view to_string(StatKind k);
StatKind stat_kind_from_string(std::string_view name);

// A set of statistics, always iterated in canonical order.
class StatSet {
public:
    StatSet() = default;
    StatSet(std::initializer_list<StatKind> kinds);
    static StatSet all();

    void insert(StatKind k) { mask_ |= bit(k); }
    bool contains(StatKind k) const { return (mask_ & bit(k)) != 0; }
    std::size_t size() const;
    bool empty() const { return mask_ == 0; }
    std::vector<StatKind> kinds() const;
    std::uint8_t mask() const { return mask_; }
    static StatSet from_mask(std::uint8_t mask);

    friend bool operator==(const StatSet&, const StatSet&) = default;

private:
    static std::uint8_t bit(StatKind k) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); }
    std::uint8_t mask_ = 0;
};

enum class FeatureDomain : std::uint8_t { Time, Frequency, Wavelet };

// Which real sequence the statistics see for complex input. Magnitude is the default.
enum class SampleComponent : std::uint8_t { Magnitude, Real, Imag, Power };

std::string_view to_string(SampleComponent c);
SampleComponent sample_component_from_string(std::string_view name);

std::string_view to_string(FeatureDomain d);

struct FeatureMeta {
    double alpha = 0.0;
    double esn0_db = 0.0;
    FeatureDomain domain = FeatureDomain::Time;
};

struct FeatureVector {
    RealVector values;
    int label = -1;
    FeatureMeta meta;
};

// Mean: arithmetic mean. Variance: population (divide by n). Skewness:
// m3 / m2^(3/2), 0 when m2 <= 1e-30. MaxMinRatio: max / min, DegenerateInput
// when min == 0. Iqr: P75 - P25, P_q taken at rank q (n - 1) of the sorted
// values with linear interpolation between neighbours.
double stat(std::span<const double> values, StatKind kind);

// Percentile with the same interpolation rule as Iqr; q in [0, 1].
double percentile(std::span<const double> values, double q);

// Statistics of |samples| (or the chosen component), concatenated in canonical order.
FeatureVector time_domain_features(const ComplexFrame& frame, const StatSet& kinds,
                                   SampleComponent component = SampleComponent::Magnitude);

// As time_domain_features, applied to the DFT of the frame.
FeatureVector frequency_domain_features(const ComplexFrame& frame, const StatSet& kinds,
                                        SampleComponent component = SampleComponent::Magnitude);

}  // namespace wvcl
