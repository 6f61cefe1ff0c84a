#include "report.hpp"

namespace rrcf::report {

json number(const BigFloat& x) { return x.to_string(kDigits); }

json complex(const ComplexBF& z) { return {{"re", number(z.real())}, {"im", number(z.imag())}}; }

json complex(const std::optional<ComplexBF>& z) { return z ? complex(*z) : json("infinity"); }

json exact(const CycloElem& e) {
    json nums = json::array();
    for (const auto& n : e.numerators()) nums.push_back(n.get_str());
    return {{"level", e.level()}, {"numerators", nums}, {"denominator", e.denominator().get_str()}};
}

json field_value(const FieldValue& v) {
    json out = {{"value", complex(v.value)}};
    if (v.exact) out["exact"] = exact(*v.exact);
    return out;
}

json classification(const Classification& c) {
    json out = {{"kind", "classification"},
                {"a", c.a},
                {"m", c.m},
                {"l", c.l},
                {"verdict", to_string(c.verdict)},
                {"provenance", to_string(c.provenance)},
                {"algebraic_condition_held", c.algebraic_condition_held}};
    if (c.limit) out["limit"] = field_value(*c.limit);
    if (!c.limit_points.empty()) {
        json pts = json::array();
        for (const auto& p : c.limit_points) pts.push_back(field_value(p));
        out["limit_points"] = pts;
    }
    if (!c.note.empty()) out["note"] = c.note;
    return out;
}

json membership(const MembershipReport& r) {
    json out = {{"kind", "membership"},
                {"k", r.k},
                {"m", r.m},
                {"detected", r.in_field ? "InField" : "NotDetected"},
                {"method", to_string(r.method)},
                {"precision_bits", r.precision_bits},
                {"height_bound", r.height_bound.get_str()},
                {"absence_proven", r.absence_proven}};
    if (r.witness) out["witness"] = exact(*r.witness);
    if (r.residue_prime) out["residue_prime"] = *r.residue_prime;
    if (r.lattice_log2_shortest) out["lattice_log2_shortest"] = *r.lattice_log2_shortest;
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

json eigen_index(const EigenIndexReport& r) {
    json idx = json::array();
    for (const auto& i : r.indices)
        idx.push_back({{"t", i.t},
                       {"s", i.s},
                       {"r", i.r},
                       {"eigenvector", i.eigenvector},
                       {"eigenvalue", i.eigenvalue_sign > 0 ? "lambda_plus"
                                      : i.eigenvalue_sign < 0 ? "lambda_minus"
                                                              : "none"}});
    return {{"kind", "eigen_index"}, {"j", r.j},         {"k", r.k},
            {"l", r.l},              {"m", r.m},         {"residue", r.residue},
            {"indices", idx},        {"holds", r.holds}, {"distinct_eigenvalues", r.distinct_eigenvalues}};
}

json cluster(const RootOfUnity& a, long m, const ClusterReport& r) {
    json pred = json::array();
    for (const auto& p : r.predicted) pred.push_back(complex(p.value));
    return {{"kind", "limit_points"}, {"a", a.to_string()},       {"m", m},
            {"predicted", pred},      {"clusters", r.clusters},   {"unmatched", r.unmatched},
            {"matched", r.matched},   {"settled", r.settled},     {"window", r.observed.size()}};
}

json summary(const GridSummary& s) {
    return {{"kind", "summary"},
            {"cases", s.cases},
            {"confirmations", s.confirmations},
            {"inconclusive", s.inconclusive},
            {"counterexamples", s.counterexamples}};
}

json digits(const CFDigits& d) {
    json e = json::array(), dn = json::array(), cn = json::array();
    for (const auto& x : d.digits()) e.push_back(x.get_str());
    for (std::size_t n = 0; n <= d.size(); ++n) {
        dn.push_back(d.d(n).get_str());
        cn.push_back(d.c(n).get_str());
    }
    return {{"digits", e}, {"c", cn}, {"d", dn}, {"terminated", d.terminated()}};
}

json certificate(const CertificateEntry& e) {
    json out = {{"n", e.n},
                {"d", e.d.get_str()},
                {"c", e.c.get_str()},
                {"status", to_string(e.status)},
                {"x_n_in_arc", e.x_n_in_arc}};
    if (e.schur_bound) out["schur_bound"] = number(*e.schur_bound);
    if (e.perturbation) out["perturbation"] = number(*e.perturbation);
    if (e.product_bound) out["product_bound"] = number(*e.product_bound);
    if (!e.note.empty()) out["note"] = e.note;
    return out;
}

json trajectory_point(const TrajectoryPoint& p) {
    return {{"n", p.n},
            {"q_product_abs", number(p.q_product_abs)},
            {"q_product_upper", number(p.q_product_upper)},
            {"approximant", complex(p.approximant)}};
}

}  // namespace rrcf::report
