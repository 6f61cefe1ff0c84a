#ifndef RRCF_TOOLS_REPORT_HPP
#define RRCF_TOOLS_REPORT_HPP

#include <json.hpp>

#include <optional>
#include <string>

#include "rrcf/bigfloat.hpp"
#include "rrcf/cf_engine.hpp"
#include "rrcf/classifier.hpp"
#include "rrcf/cyclotomic.hpp"
#include "rrcf/witness.hpp"

namespace rrcf::report {

using nlohmann::json;

/// Significant decimal digits of every numeric field.
inline constexpr int kDigits = 40;

json number(const BigFloat& x);
json complex(const ComplexBF& z);
json complex(const std::optional<ComplexBF>& z);
/// {"level", "numerators", "denominator"}, integers as decimal strings.
json exact(const CycloElem& e);
json field_value(const FieldValue& v);

json classification(const Classification& c);
json membership(const MembershipReport& r);
json eigen_index(const EigenIndexReport& r);
json cluster(const RootOfUnity& a, long m, const ClusterReport& r);
json summary(const GridSummary& s);

json digits(const CFDigits& d);
json certificate(const CertificateEntry& e);
json trajectory_point(const TrajectoryPoint& p);

}  // namespace rrcf::report

#endif  // RRCF_TOOLS_REPORT_HPP
