#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <string>
#include <thread>

#include "report.hpp"
#include "rrcf/cf_engine.hpp"
#include "rrcf/classifier.hpp"
#include "rrcf/errors.hpp"
#include "rrcf/witness.hpp"

namespace {

using namespace rrcf;
using report::json;

enum Exit : int { kOk = 0, kInternal = 1, kUsage = 2, kInconclusive = 3, kCounterexample = 4 };

struct RunConfig {
    long precision_bits = 256;
    std::string output = "json";
    std::string out_path;
    unsigned parallelism = 1;
    long exact_threshold = 200;
};

class Sink {
   public:
    explicit Sink(const RunConfig& cfg) : cfg_(cfg) {
        if (!cfg.out_path.empty()) {
            file_ = std::make_unique<std::ofstream>(cfg.out_path);
            if (!*file_) throw Error(ErrorKind::DomainError, "cannot open " + cfg.out_path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void record(const json& j) {
        if (cfg_.output == "human") stream() << j.dump(2) << "\n";
        else stream() << j.dump() << "\n";
    }

   private:
    const RunConfig& cfg_;
    std::unique_ptr<std::ofstream> file_;
};

/// "j/k", "1", "-1" or a complex literal: "0.6+0.8i", "-1", "0.5i", "(0.6,0.8)".
struct ASpec {
    std::optional<RootOfUnity> root;
    std::optional<ComplexBF> value;
};

ASpec parse_a(const std::string& text, mpfr_prec_t prec) {
    ASpec out;
    if (text.find('/') != std::string::npos || text == "1" || text == "-1") {
        out.root = RootOfUnity::parse(text);
        return out;
    }
    static const std::regex pair(R"(^\(\s*([^,]+?)\s*,\s*([^)]+?)\s*\)$)");
    static const std::regex sum(R"(^([+-]?[0-9.eE]+(?:[eE][+-]?[0-9]+)?)?(?:([+-])([0-9.eE]*(?:[eE][+-]?[0-9]+)?)i)?$)");
    std::smatch mt;
    std::string re = "0", im = "0";
    if (std::regex_match(text, mt, pair)) {
        re = mt[1];
        im = mt[2];
    } else if (std::regex_match(text, mt, sum) && (mt[1].matched || mt[2].matched)) {
        if (mt[1].matched) re = mt[1];
        if (mt[2].matched) im = std::string(mt[2]) + (mt[3].length() ? std::string(mt[3]) : "1");
    } else if (text.size() > 1 && text.back() == 'i') {
        im = text.substr(0, text.size() - 1);
    } else {
        throw Error(ErrorKind::DomainError, "cannot parse a = '" + text + "'");
    }
    try {
        out.value = ComplexBF(BigFloat(re, prec), BigFloat(im, prec));
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::DomainError, "cannot parse a = '" + text + "'");
    }
    return out;
}

int exit_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::HeuristicInconclusive:
        case ErrorKind::Inconclusive:
        case ErrorKind::PrecisionExhausted:
        case ErrorKind::BudgetExhausted: return kInconclusive;
        default: return kUsage;
    }
}

int cmd_classify(const RunConfig& cfg, const std::string& a_text, long m, long l) {
    const auto prec = static_cast<mpfr_prec_t>(cfg.precision_bits);
    const ASpec a = parse_a(a_text, prec);
    Sink out(cfg);
    const Classification c = a.root ? classify(*a.root, m, l, prec) : classify(*a.value, m, l);
    out.record(report::classification(c));
    return c.verdict == Verdict::ConditionNotSatisfied ? kInconclusive : kOk;
}

int cmd_witness(const RunConfig& cfg, const std::string& r_text, std::size_t terms, bool floor_digits,
                std::size_t budget_bits) {
    const auto prec = static_cast<mpfr_prec_t>(cfg.precision_bits);
    WitnessParams params;
    params.R = RValue::parse(r_text);
    if (params.R.ratio <= 0) throw Error(ErrorKind::DomainError, "R must be positive");
    params.max_terms = terms;
    params.digit_budget_bits = budget_bits;
    params.rounding = floor_digits ? DigitRounding::Floor : DigitRounding::Ceiling;

    const BigFloat R = params.R.value(prec);
    const BigFloat sqrt5_minus_one = sqrt(BigFloat(5L, prec)) - BigFloat(1L, prec);
    if (R >= sqrt5_minus_one)
        std::cerr << "warning: R >= sqrt(5) - 1; S_R is then not a proper extension of the golden-ratio "
                     "divergence set S and the witness has no divergence interpretation\n";

    const WitnessResult w = build_witness(params);
    const CFDigits& d = w.digits;
    const LambdaR lam = lambda_r(params.R, prec);
    json j = {{"kind", "witness"},
              {"R", params.R.to_string()},
              {"rounding", floor_digits ? "floor" : "ceiling"},
              {"lambda_R", report::number(lam.lambda)},
              {"golden_gap", report::number(golden_gap(lam))}};
    j.update(report::digits(d));
    if (w.budget_exhausted) {
        j["blocked"] = {{"n", d.size() + 1},
                        {"status", "BudgetExhausted"},
                        {"d", w.blocked_d.get_str()},
                        {"approx_bits", w.blocked_bits}};
    }
    if (d.size() >= 2) {
        json ratios = json::array();
        for (const auto& r : tr_ratios(d, params.R, 1, prec)) ratios.push_back(report::number(r));
        j["tr_ratios_from_n1"] = ratios;
    }
    if (d.size() >= 1) {
        const BigFloat R_over_2pi = R / (BigFloat::pi(prec) * BigFloat(2L, prec));
        json chain = json::array();
        for (std::size_t n = 1; n < d.size(); ++n) {
            const mpq_class bound = distance_bound(d, n, mpq_class(1, 2));
            chain.push_back({{"n", n},
                             {"distance_to_half_bound", bound.get_str()},
                             {"below_R_over_2pi", BigFloat(bound, prec) < R_over_2pi}});
        }
        j["R_over_2pi"] = report::number(R_over_2pi);
        j["bound_chain"] = chain;
        const std::size_t n = d.size() >= 2 ? d.size() - 1 : 0;
        const mpq_class radius = d.terminated() ? mpq_class(0) : approx_error_bound(d, n);
        try {
            const ArcMembership arc = in_M_R(d.convergent(n), radius, R, prec);
            j["arc"] = {{"n", n},
                        {"inside", arc.inside},
                        {"margin", report::number(arc.margin)},
                        {"via_chord", arc.via_chord}};
        } catch (const Error& e) {
            j["arc"] = {{"n", n}, {"status", std::string(to_string(e.kind()))}};
        }
    }
    std::vector<std::size_t> idx;
    for (std::size_t n = 3; n <= d.size(); ++n) idx.push_back(n);
    CertificateOptions co;
    co.prec = prec;
    co.exact_threshold = cfg.exact_threshold;
    json certs = json::array();
    for (const auto& e : divergence_certificate(d, params.R, idx, co)) certs.push_back(report::certificate(e));
    j["certificates"] = certs;
    Sink(cfg).record(j);
    return kOk;
}

int cmd_conjectures(const RunConfig& cfg, int which, long k_max, long m_max, long periods, bool quiet,
                    const std::string& spot_a, long spot_m) {
    Sink out(cfg);
    GridSummary s;
    std::vector<json> counterexamples;
    auto emit = [&](const json& j, bool bad) {
        if (bad) counterexamples.push_back(j);
        if (!quiet) out.record(j);
    };
    if (which == 1) {
        MembershipOptions opts;
        opts.prec = std::max<mpfr_prec_t>(512, cfg.precision_bits);
        const MembershipGrid g = membership_grid(k_max, m_max, opts, cfg.parallelism);
        for (const auto& r : g.reports) emit(report::membership(r), r.in_field != membership_predicted(r.k, r.m));
        s = g.summary;
    } else if (which == 2) {
        const EigenIndexGrid g = eigen_index_grid(k_max, m_max, cfg.parallelism);
        for (const auto& r : g.reports) emit(report::eigen_index(r), !r.holds);
        s = g.summary;
    } else if (!spot_a.empty()) {
        const RootOfUnity a = RootOfUnity::parse(spot_a);
        const ClusterReport r = limit_point_check(a, spot_m, 1, periods * spot_m,
                                                  static_cast<mpfr_prec_t>(cfg.precision_bits));
        emit(report::cluster(a, spot_m, r), !r.matched && r.settled);
        s.cases = 1;
        (r.matched ? s.confirmations : r.settled ? s.counterexamples : s.inconclusive) = 1;
    } else {
        const ClusterGrid g = limit_point_grid(k_max, m_max, periods, cfg.parallelism);
        for (const auto& [key, r] : g.reports) emit(report::cluster(key.first, key.second, r), !r.matched && r.settled);
        s = g.summary;
    }
    json sj = report::summary(s);
    sj["which"] = which;
    out.record(sj);
    if (!counterexamples.empty()) {
        for (auto& c : counterexamples) {
            c["counterexample"] = true;
            std::cerr << c.dump() << "\n";
        }
        return kCounterexample;
    }
    return s.inconclusive ? kInconclusive : kOk;
}

int cmd_trajectory(const RunConfig& cfg, const std::string& kind, const std::string& x_text,
                   const std::string& a_text, long n_max, long stride) {
    const auto prec = static_cast<mpfr_prec_t>(cfg.precision_bits);
    const RootOfUnity x = RootOfUnity::parse(x_text);
    Sink out(cfg);
    std::ostream& os = out.stream();
    const bool csv = cfg.output == "csv";
    if (csv) write_trajectory_csv_header(os);
    auto sink = [&](const TrajectoryPoint& p) {
        if (csv) write_trajectory_csv_row(os, p, report::kDigits);
        else out.record(report::trajectory_point(p));
    };
    const bool exact = x.order <= cfg.exact_threshold;
    if (kind == "schur") {
        if (!a_text.empty()) throw Error(ErrorKind::DomainError, "--a applies to --kind ka only");
        if (exact) trajectory_stream<CycloElem>(schur_spec(x.exact(x.order)), n_max, stride, prec, sink);
        else trajectory_stream<ComplexBF>(schur_spec_numeric(x.num, x.order, prec), n_max, stride, prec, sink);
        return kOk;
    }
    if (kind != "ka") throw Error(ErrorKind::DomainError, "--kind must be schur or ka");
    const ASpec a = parse_a(a_text.empty() ? "1/1" : a_text, prec);
    if (a.root && exact && a.root->order <= cfg.exact_threshold) {
        const long L = lcm_long(a.root->order, x.order);
        trajectory_stream<CycloElem>(ka_spec(a.root->exact(L), x.exact(L)), n_max, stride, prec, sink);
        return kOk;
    }
    const ComplexBF av = a.root ? a.root->numeric(prec) : *a.value;
    const BigFloat dev = abs(av.abs() - BigFloat(1L, prec));
    if (dev > BigFloat::exp2(-static_cast<long>(prec) / 2, prec))
        throw Error(ErrorKind::DomainError, "|a| must be 1");
    trajectory_stream<ComplexBF>(ka_spec_numeric(av, x.num, x.order, prec), n_max, stride, prec, sink);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Rogers-Ramanujan continued fractions at roots of unity"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    std::optional<long> precision_flag;
    app.add_option("--precision", precision_flag, "Working precision in bits (>= 64; env RRCF_PRECISION_BITS)");
    app.add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
    app.add_option("--out", cfg.out_path, "Write records to this file instead of stdout");
    cfg.parallelism = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--parallelism", cfg.parallelism, "Worker threads for grid commands")->check(CLI::PositiveNumber);
    app.add_option("--exact-threshold", cfg.exact_threshold, "Largest root order handled by exact arithmetic")
        ->check(CLI::NonNegativeNumber);

    std::string a_text, r_text, x_text, kind = "schur", spot_a;
    long m = 0, l = 1, n_max = 0, stride = 1, k_max = 10, m_max = 60, periods = 64, spot_m = 5;
    std::size_t terms = 5, budget_bits = 1u << 16;
    int which = 1;
    bool floor_digits = false, full_grid = false, quiet = false;

    auto* c_classify = app.add_subcommand("classify", "Classify K_a at x = zeta_m^l");
    c_classify->add_option("--a", a_text, "a as j/k (exp(2 pi i j/k)) or a complex literal")->required();
    c_classify->add_option("--m", m, "Order of x")->required()->check(CLI::PositiveNumber);
    c_classify->add_option("--l", l, "x = exp(2 pi i l/m)");

    auto* c_witness = app.add_subcommand("witness", "Construct and certify a divergence witness");
    c_witness->add_option("--R", r_text, "Arc radius: decimal, a/b or c*pi")->required();
    c_witness->add_option("--terms", terms, "Number of digits")->check(CLI::PositiveNumber);
    c_witness->add_option("--budget-bits", budget_bits, "Largest digit bit length computed");
    c_witness->add_flag("--floor", floor_digits, "Round lambda^{d/2} down instead of up");

    auto* c_conj = app.add_subcommand("conjectures", "Run a conjecture harness over a grid");
    c_conj->add_option("--which", which, "1: field membership, 2: eigenvector indices, 3: limit points")
        ->check(CLI::Range(1, 3));
    c_conj->add_option("--k-max", k_max, "Largest k")->check(CLI::PositiveNumber);
    c_conj->add_option("--m-max", m_max, "Largest m")->check(CLI::PositiveNumber);
    c_conj->add_flag("--full-grid", full_grid, "k <= 50, m <= 100");
    c_conj->add_option("--periods", periods, "Harness 3: periods of the recursion")->check(CLI::Range(3L, 100000L));
    c_conj->add_option("--a", spot_a, "Harness 3: single a = j/k");
    c_conj->add_option("--m", spot_m, "Harness 3: single m")->check(CLI::PositiveNumber);
    c_conj->add_flag("--quiet", quiet, "Print only the summary and counterexamples");

    auto* c_traj = app.add_subcommand("trajectory", "Stream |Q_N Q_{N-1}| and approximants");
    c_traj->add_option("--kind", kind, "schur or ka")->check(CLI::IsMember({"schur", "ka"}));
    c_traj->add_option("--x", x_text, "x as j/k")->required();
    c_traj->add_option("--a", a_text, "a as j/k or a complex literal (ka only)");
    c_traj->add_option("--n-max", n_max, "Last index")->required()->check(CLI::NonNegativeNumber);
    c_traj->add_option("--stride", stride, "Index stride")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (precision_flag) {
            cfg.precision_bits = *precision_flag;
        } else if (const char* env = std::getenv("RRCF_PRECISION_BITS")) {
            try {
                cfg.precision_bits = std::stol(env);
            } catch (const std::logic_error&) {
                throw Error(ErrorKind::DomainError, "RRCF_PRECISION_BITS is not an integer");
            }
        }
        if (cfg.precision_bits < 64) throw Error(ErrorKind::DomainError, "precision must be at least 64 bits");
        if (cfg.output == "csv" && !c_traj->parsed())
            throw Error(ErrorKind::DomainError, "csv output is available for trajectory only");

        if (c_classify->parsed()) return cmd_classify(cfg, a_text, m, l);
        if (c_witness->parsed()) return cmd_witness(cfg, r_text, terms, floor_digits, budget_bits);
        if (c_conj->parsed()) {
            if (full_grid) {
                k_max = 50;
                m_max = 100;
            }
            return cmd_conjectures(cfg, which, k_max, m_max, periods, quiet, spot_a, spot_m);
        }
        if (c_traj->parsed()) {
            if (cfg.output == "json" && !app.get_option("--output")->count()) cfg.output = "csv";
            return cmd_trajectory(cfg, kind, x_text, a_text, n_max, stride);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
