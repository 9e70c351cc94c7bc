#ifndef ORLICZ_SERIALIZE_HPP
#define ORLICZ_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "orlicz/optimality.hpp"
#include "orlicz/scenarios.hpp"

namespace orlicz {

/// Ordered maps keep emitted documents byte-stable across runs.
using json = nlohmann::ordered_json;

/// Bumped whenever a document layout changes; see the schemas directory for
/// the matching definitions.
inline constexpr const char* kSchemaVersion = "1";

inline json schema_header(const std::string& name) {
    return json{{"schema", "orlicz/" + name + "/v" + kSchemaVersion}};
}

inline void expect_schema(const json& j, const std::string& name) {
    const std::string want = "orlicz/" + name + "/v" + kSchemaVersion;
    if (!j.contains("schema") || j["schema"] != want)
        throw std::invalid_argument("expected schema " + want);
}

// Rationals and PLL terms travel as their textual forms, which round-trip
// bit-exactly.

inline json rational_to_json(const Rational& r) { return format_rational(r); }
inline Rational rational_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

inline json pll_to_json(const PLLTerm& t) { return to_string(t); }
inline PLLTerm pll_from_json(const json& j) { return parse_pll(j.get<std::string>()); }

inline json hardy_to_json(const HardyParams& p) {
    json j = schema_header("hardy-params");
    j["alpha"] = rational_to_json(p.alpha);
    j["beta"] = rational_to_json(p.beta);
    return j;
}

inline HardyParams hardy_from_json(const json& j) {
    expect_schema(j, "hardy-params");
    return HardyParams(rational_from_json(j.at("alpha")), rational_from_json(j.at("beta")));
}

inline json fundamental_to_json(const FundamentalFunction& phi) {
    json j = schema_header("fundamental");
    if (phi.is_symbolic()) {
        j["kind"] = "symbolic";
        j["term"] = pll_to_json(phi.term());
    } else {
        j["kind"] = "tabulated";
        j["abscissas"] = phi.table_abscissas();
        j["values"] = phi.table_values();
    }
    return j;
}

inline FundamentalFunction fundamental_from_json(const json& j) {
    expect_schema(j, "fundamental");
    const std::string kind = j.at("kind");
    if (kind == "symbolic") return FundamentalFunction::symbolic(pll_from_json(j.at("term")));
    if (kind == "tabulated")
        return FundamentalFunction::tabulated(j.at("abscissas").get<std::vector<double>>(),
                                              j.at("values").get<std::vector<double>>());
    throw std::invalid_argument("unknown fundamental kind: " + kind);
}

inline json segment_to_json(const PatchSegment& s) {
    return json{{"u_lo", s.u_lo}, {"u_hi", s.u_hi}, {"logv_lo", s.logv_lo},
                {"logv_hi", s.logv_hi}};
}

inline PatchSegment segment_from_json(const json& j) {
    return PatchSegment{j.at("u_lo"), j.at("u_hi"), j.at("logv_lo"), j.at("logv_hi")};
}

/// Symbolic, tabulated and patched backends serialize; the opaque callable
/// backend cannot be reconstructed and is rejected.
inline json young_to_json(const YoungFunction& A) {
    json j = schema_header("young");
    switch (A.kind()) {
        case YoungFunction::Kind::SymbolicPLL:
            j["kind"] = "symbolic";
            j["term"] = pll_to_json(*A.asymptotic());
            j["splice_pow"] = rational_to_json(A.splice_pow());
            return j;
        case YoungFunction::Kind::Tabulated:
            j["kind"] = "tabulated";
            j["abscissas"] = A.table_abscissas();
            j["values"] = A.table_values();
            return j;
        case YoungFunction::Kind::Patched: {
            j["kind"] = "patched";
            j["base"] = young_to_json(A.base());
            json segs = json::array();
            for (const auto& s : A.segments()) segs.push_back(segment_to_json(s));
            j["segments"] = std::move(segs);
            return j;
        }
        case YoungFunction::Kind::Custom:
            throw std::invalid_argument("callable-backed Young function is not serializable");
    }
    throw std::logic_error("unreachable");
}

inline YoungFunction young_from_json(const json& j) {
    expect_schema(j, "young");
    const std::string kind = j.at("kind");
    if (kind == "symbolic")
        return YoungFunction::symbolic(pll_from_json(j.at("term")),
                                       rational_from_json(j.at("splice_pow")));
    if (kind == "tabulated")
        return YoungFunction::tabulated(j.at("abscissas").get<std::vector<double>>(),
                                        j.at("values").get<std::vector<double>>());
    if (kind == "patched") {
        std::vector<PatchSegment> segs;
        for (const auto& s : j.at("segments")) segs.push_back(segment_from_json(s));
        return YoungFunction::patched(young_from_json(j.at("base")), std::move(segs));
    }
    throw std::invalid_argument("unknown Young kind: " + kind);
}

inline json space_to_json(const SpaceSpec& s) {
    json j = schema_header("space");
    switch (s.kind) {
        case SpaceSpec::Kind::Orlicz:
            j["kind"] = "orlicz";
            j["young"] = young_to_json(*s.A);
            return j;
        case SpaceSpec::Kind::MarcinkiewiczEndpoint:
            j["kind"] = "marcinkiewicz";
            j["phi"] = fundamental_to_json(*s.phi);
            return j;
        case SpaceSpec::Kind::LorentzEndpoint:
            j["kind"] = "lorentz-endpoint";
            j["phi"] = fundamental_to_json(*s.phi);
            return j;
        case SpaceSpec::Kind::LorentzPQ:
            j["kind"] = "lorentz";
            j["p"] = s.p;
            j["q"] = s.q;
            return j;
        case SpaceSpec::Kind::Lebesgue:
            j["kind"] = "lebesgue";
            j["p"] = s.p;
            return j;
    }
    throw std::logic_error("unreachable");
}

inline SpaceSpec space_from_json(const json& j) {
    expect_schema(j, "space");
    const std::string kind = j.at("kind");
    if (kind == "orlicz") return SpaceSpec::orlicz(young_from_json(j.at("young")));
    if (kind == "marcinkiewicz")
        return SpaceSpec::marcinkiewicz(fundamental_from_json(j.at("phi")));
    if (kind == "lorentz-endpoint")
        return SpaceSpec::lorentz_endpoint(fundamental_from_json(j.at("phi")));
    if (kind == "lorentz") {
        const auto num = [&](const json& v) -> double {
            return v.is_string() && v == "inf" ? std::numeric_limits<double>::infinity()
                                               : v.get<double>();
        };
        return SpaceSpec::lorentz_pq(num(j.at("p")), num(j.at("q")));
    }
    if (kind == "lebesgue") {
        const json& p = j.at("p");
        return SpaceSpec::lebesgue(p.is_string() && p == "inf"
                                       ? std::numeric_limits<double>::infinity()
                                       : p.get<double>());
    }
    throw std::invalid_argument("unknown space kind: " + kind);
}

inline json domination_to_json(const DominationReport& r) {
    json j = schema_header("domination");
    j["holds"] = r.holds;
    j["C"] = r.C;
    j["Cprime"] = r.Cprime;
    j["max_ratio"] = r.max_ratio;
    return j;
}

inline DominationReport domination_from_json(const json& j) {
    expect_schema(j, "domination");
    DominationReport r;
    r.holds = j.at("holds");
    r.C = j.at("C");
    r.Cprime = j.at("Cprime");
    r.max_ratio = j.at("max_ratio");
    return r;
}

inline json growth_probe_to_json(const GrowthProbeReport& r) {
    json j = schema_header("growth-probe");
    j["ts"] = r.ts;
    j["stat_ii"] = r.stat_ii;
    j["Ks"] = r.Ks;
    j["ratio_iii"] = r.ratio_iii;
    j["ii_diverges"] = r.ii_diverges;
    j["iii_all_one"] = r.iii_all_one;
    j["consistent"] = r.consistent;
    return j;
}

inline json probe_to_json(const ProbeReport& r) {
    json j = schema_header("probe");
    j["max_ratio"] = r.max_ratio;
    j["argmax"] = r.argmax;
    j["depth_trend"] = r.depth_trend;
    j["support_trend"] = r.support_trend;
    j["stable"] = r.stable;
    j["diverging"] = r.diverging;
    j["decade_factor"] = r.decade_factor;
    return j;
}

inline ProbeReport probe_from_json(const json& j) {
    expect_schema(j, "probe");
    ProbeReport r;
    r.max_ratio = j.at("max_ratio");
    r.argmax = j.at("argmax");
    r.depth_trend = j.at("depth_trend").get<std::vector<double>>();
    r.support_trend = j.at("support_trend").get<std::vector<double>>();
    r.stable = j.at("stable");
    r.diverging = j.at("diverging");
    r.decade_factor = j.at("decade_factor");
    return r;
}

inline json witness_to_json(const WitnessConstruction& w) {
    json j = schema_header("witness");
    j["gamma"] = w.gamma;
    j["log_t"] = w.log_t;
    j["log_tau"] = w.log_tau;
    j["patched"] = young_to_json(w.patched);
    return j;
}

inline WitnessConstruction witness_from_json(const json& j) {
    expect_schema(j, "witness");
    WitnessConstruction w;
    w.gamma = j.at("gamma");
    w.log_t = j.at("log_t").get<std::vector<double>>();
    w.log_tau = j.at("log_tau").get<std::vector<double>>();
    w.patched = young_from_json(j.at("patched"));
    return w;
}

inline const char* outcome_name(Verdict::Outcome o) {
    return o == Verdict::Outcome::ExistsOptimal ? "exists-optimal" : "no-optimal";
}

inline const char* reason_name(Verdict::Reason r) {
    switch (r) {
        case Verdict::Reason::None: return "none";
        case Verdict::Reason::GrowthCriterion: return "improvable";
        case Verdict::Reason::BoundedG_LInfinityCase: return "bounded-growth";
    }
    throw std::logic_error("unreachable");
}

/// The verdict document carries the symbolic artifacts of the decision; the
/// numeric candidate table is reproducible from the generator and is not
/// embedded.
inline json verdict_to_json(const Verdict& v) {
    json j = schema_header("verdict");
    j["outcome"] = outcome_name(v.outcome);
    j["reason"] = reason_name(v.reason);
    j["admissible"] = v.admissible;
    j["phi_X"] = v.phi_X ? json(pll_to_json(*v.phi_X)) : json(nullptr);
    j["candidate"] = v.candidate_term ? json(pll_to_json(*v.candidate_term)) : json(nullptr);
    j["conjugate"] = v.conjugate_term ? json(pll_to_json(*v.conjugate_term)) : json(nullptr);
    j["g"] = v.g_term ? json(pll_to_json(*v.g_term)) : json(nullptr);
    j["growth_criterion"] = v.growth_ok ? json(*v.growth_ok) : json(nullptr);
    j["domination_selftest"] =
        v.domination_selftest ? domination_to_json(*v.domination_selftest) : json(nullptr);
    j["note"] = v.note;
    return j;
}

inline Verdict verdict_from_json(const json& j) {
    expect_schema(j, "verdict");
    Verdict v;
    const std::string out = j.at("outcome");
    if (out == "exists-optimal") v.outcome = Verdict::Outcome::ExistsOptimal;
    else if (out == "no-optimal") v.outcome = Verdict::Outcome::NoOptimal;
    else throw std::invalid_argument("unknown outcome: " + out);
    const std::string reason = j.at("reason");
    if (reason == "none") v.reason = Verdict::Reason::None;
    else if (reason == "improvable") v.reason = Verdict::Reason::GrowthCriterion;
    else if (reason == "bounded-growth") v.reason = Verdict::Reason::BoundedG_LInfinityCase;
    else throw std::invalid_argument("unknown reason: " + reason);
    v.admissible = j.at("admissible");
    if (!j.at("phi_X").is_null()) v.phi_X = pll_from_json(j["phi_X"]);
    if (!j.at("candidate").is_null()) v.candidate_term = pll_from_json(j["candidate"]);
    if (!j.at("conjugate").is_null()) v.conjugate_term = pll_from_json(j["conjugate"]);
    if (!j.at("g").is_null()) v.g_term = pll_from_json(j["g"]);
    if (!j.at("growth_criterion").is_null()) v.growth_ok = j["growth_criterion"].get<bool>();
    if (!j.at("domination_selftest").is_null())
        v.domination_selftest = domination_from_json(j["domination_selftest"]);
    v.note = j.at("note");
    if (v.candidate_term && v.candidate_term->pow >= 1)
        v.candidate = YoungFunction::symbolic(*v.candidate_term);
    return v;
}

inline json table_to_json(const std::vector<TableRow>& rows) {
    json j = schema_header("table");
    json arr = json::array();
    for (const auto& r : rows) {
        json row;
        row["target"] = r.target;
        row["condition"] = r.condition;
        row["domain"] = r.domain;
        row["growth"] = r.growth;
        row["verdict"] = r.verdict;
        arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    return j;
}

}  // namespace orlicz

#endif
