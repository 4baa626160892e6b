#include "galindex/report.hpp"

#include <chrono>
#include <sstream>

namespace galindex {

using nlohmann::json;

namespace {

json rational_to_json(const Rational& r) {
    return json{{"num", r.num}, {"den", r.den}};
}

template <typename T>
json opt_to_json(const std::optional<T>& v) {
    if (v)
        return json(*v);
    return json(nullptr);
}

} // namespace

json profile_to_json(const RamificationProfile& pr) {
    json j;
    j["p"] = (long)pr.p;
    j["e_K"] = pr.e_K;
    j["f_K"] = pr.f_K;
    j["n"] = pr.n;
    j["e_rel"] = pr.e_rel;
    j["f_rel"] = pr.f_rel;
    j["t"] = pr.t;
    j["a"] = pr.a;
    j["t0"] = pr.t0;
    j["unramified"] = pr.unramified;
    j["tame"] = pr.tame;
    j["weakly_ramified"] = pr.weakly_ramified;
    j["maximal"] = pr.maximal;
    j["almost_maximal"] = pr.almost_maximal;
    return j;
}

json formulas_to_json(const IndexReport& rep) {
    json j;
    j["source"] = rep.source;
    j["v_p_m"] = opt_to_json(rep.v_p_m);
    j["v_p_assoc_index"] = opt_to_json(rep.v_p_assoc_index);
    j["free_over_assoc"] = opt_to_json(rep.free_over_assoc);
    j["v_p_maximal_order_index"] = opt_to_json(rep.v_p_maximal_order_index);
    j["bound_general"] = rational_to_json(rep.bound_general);
    j["bound_easy"] = rational_to_json(rep.bound_easy);
    j["witness"] = rep.witness;
    return j;
}

json oracle_to_json(const OracleResult& res) {
    json j;
    j["source"] = "oracle";
    j["v_K_min"] = res.v_K_min;
    j["v_p_m"] = res.v_p_m;
    j["R0"] = res.R0;
    j["classes_enumerated"] = res.classes_enumerated;
    j["witness"] = res.witness_text;
    j["witness_digits"] = res.witness_digits;
    j["assoc_pivots"] = res.assoc.pivots;
    j["v_K_assoc_index"] = res.assoc.v_K_index;
    j["v_p_assoc_index"] = res.v_p_assoc_index;
    j["free_over_assoc"] = res.free_over_assoc;
    return j;
}

json report_values_json(const ReportDocument& doc) {
    json j;
    j["profile"] = profile_to_json(doc.profile);
    j["formulas"] = formulas_to_json(doc.formulas);
    j["oracle"] = doc.oracle ? oracle_to_json(*doc.oracle) : json(nullptr);
    j["agreement"] = doc.agreement;
    return j;
}

json report_to_json(const ReportDocument& doc) {
    json j = report_values_json(doc);
    j["input"] = doc.input;
    j["precision"] = doc.precision_used;
    j["timing"] = json{{"total_ms", doc.timing_ms}};
    return j;
}

namespace {

json build_agreement(const IndexReport& formulas, const OracleResult& oracle, bool& agree) {
    json j;
    agree = true;
    if (formulas.v_p_m) {
        const bool ok = *formulas.v_p_m == oracle.v_p_m;
        j["v_p_m"] = ok;
        agree = agree && ok;
    } else {
        j["v_p_m"] = nullptr;
    }
    if (formulas.v_p_assoc_index) {
        const bool ok = *formulas.v_p_assoc_index == oracle.v_p_assoc_index;
        j["v_p_assoc_index"] = ok;
        agree = agree && ok;
    } else {
        j["v_p_assoc_index"] = nullptr;
    }
    if (formulas.free_over_assoc) {
        const bool ok = *formulas.free_over_assoc == oracle.free_over_assoc;
        j["free_over_assoc"] = ok;
        agree = agree && ok;
    } else {
        j["free_over_assoc"] = nullptr;
    }
    j["overall"] = agree;
    return j;
}

} // namespace

ReportDocument analyze(const ExtensionSpec& spec, const AnalysisOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    unsigned precision = opts.precision ? opts.precision
                                        : (spec.precision ? spec.precision : 32u);
    for (;;) {
        try {
            ReportDocument doc;
            doc.input = extension_spec_to_json(spec);
            doc.precision_used = precision;
            const TowerPtr tower = tower_of(spec, precision);
            const GaloisLatticeModel model = build_lattice_model(tower, spec.base_cut);
            doc.profile = profile(model);
            doc.formulas = closed_form_report(doc.profile);
            if (opts.with_oracle) {
                OracleOptions oo;
                oo.budget = opts.budget;
                oo.threads = opts.threads;
                if (doc.profile.cyclic_degree_p())
                    oo.seed = minimal_generator_recipe(doc.profile);
                doc.oracle = run_oracle(model, oo);
                doc.agreement = build_agreement(doc.formulas, *doc.oracle, doc.agree);
            } else {
                doc.agreement = json(nullptr);
            }
            doc.timing_ms = (long)std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - start)
                                .count();
            return doc;
        } catch (const BudgetExceeded&) {
            throw;
        } catch (const ResourceError&) {
            if (precision * 2 > opts.precision_cap)
                throw;
            precision *= 2;
        }
    }
}

std::string render_report_text(const ReportDocument& doc) {
    std::ostringstream os;
    const auto& pr = doc.profile;
    os << "extension: [L:K] = " << pr.n << ", e = " << pr.e_rel << ", f = " << pr.f_rel
       << " over K with e_K = " << pr.e_K << ", f_K = " << pr.f_K << " (p = " << pr.p
       << ")\n";
    os << "ramification: t = " << pr.t << ", a = " << pr.a << ", t0 = " << pr.t0;
    if (pr.unramified)
        os << " [unramified]";
    else if (pr.tame)
        os << " [tame]";
    if (pr.weakly_ramified && !pr.tame)
        os << " [weakly ramified]";
    if (pr.maximal)
        os << " [maximally ramified]";
    else if (pr.almost_maximal)
        os << " [almost-maximally ramified]";
    os << "\n";
    const auto put_val = [&os, &pr](const char* what, const std::optional<long>& v) {
        os << what << ": ";
        if (v)
            os << pr.p << "^" << *v;
        else
            os << "(outside the closed-form scope)";
        os << "\n";
    };
    put_val("formula m(L/K)", doc.formulas.v_p_m);
    put_val("formula [A:O_K[G]]", doc.formulas.v_p_assoc_index);
    if (doc.formulas.free_over_assoc)
        os << "formula freeness: " << (*doc.formulas.free_over_assoc ? "free" : "not free")
           << "\n";
    if (doc.formulas.v_p_maximal_order_index)
        os << "formula [M:O_K[G]]: " << pr.p << "^" << *doc.formulas.v_p_maximal_order_index
           << "\n";
    os << "bound: v_p(m) <= " << doc.formulas.bound_general.num << "/"
       << doc.formulas.bound_general.den << "\n";
    if (!doc.formulas.witness.empty())
        os << "formula witness: " << doc.formulas.witness << "\n";
    if (doc.oracle) {
        os << "oracle m(L/K): " << pr.p << "^" << doc.oracle->v_p_m << "  (v_K = "
           << doc.oracle->v_K_min << ", classes = " << doc.oracle->classes_enumerated
           << ", R0 = " << doc.oracle->R0 << ")\n";
        os << "oracle [A:O_K[G]]: " << pr.p << "^" << doc.oracle->v_p_assoc_index
           << "  pivots = [";
        for (size_t i = 0; i < doc.oracle->assoc.pivots.size(); ++i)
            os << (i ? ", " : "") << doc.oracle->assoc.pivots[i];
        os << "]\n";
        os << "oracle freeness: " << (doc.oracle->free_over_assoc ? "free" : "not free")
           << "\n";
        os << "oracle witness: " << doc.oracle->witness_text << "\n";
        os << "agreement: " << (doc.agree ? "formula and oracle agree" : "DISAGREEMENT")
           << "\n";
    }
    os << "precision: " << doc.precision_used << ", time: " << doc.timing_ms << " ms\n";
    return os.str();
}

std::vector<std::string> formula_invariant_violations(const RamificationProfile& pr) {
    std::vector<std::string> bad;
    std::ostringstream tag;
    tag << "(p=" << pr.p << ",e=" << pr.e_K << ",f=" << pr.f_K << ",t=" << pr.t << ") ";
    const std::string where = tag.str();
    const auto fail = [&](const std::string& msg) { bad.push_back(where + msg); };

    const long p = (long)pr.p;
    const long v = minimal_index_cyclic_p(pr);
    const FreenessResult fr = freeness_cyclic_p(pr);

    if (v < 1)
        fail("wildly ramified but v_p(m) < 1");
    if (fr.v_p_assoc_index > v)
        fail("associated-order index exceeds the minimal index");
    if ((fr.v_p_assoc_index == v) != fr.free)
        fail("freeness is not equivalent to index equality");

    const GeneralBound b =
        general_bound(pr.p, pr.e_rel, pr.f_K, pr.e_K * pr.e_rel * pr.f_K, pr.n);
    if (v * b.bound.den > b.bound.num)
        fail("general bound violated");
    if (v * b.easy_bound.den >= b.easy_bound.num)
        fail("strict easy bound violated");

    if (pr.a == 0) {
        if (!fr.free)
            fail("a = 0 must be free");
        if (v != p * (long)pr.e_K * (long)pr.f_K / 2)
            fail("a = 0 index differs from p e f / 2");
        const long mo = maximal_order_index_cyclic(pr.p, pr.f_K, pr.e_K, 1, 1, true);
        if (v != mo)
            fail("a = 0 index differs from the maximal-order index");
    } else {
        const NuData d = nu_data(pr);
        if (d.mu > 0)
            fail("mu > 0");
        if (v != (long)pr.f_K * (d.nu_sum() + d.mu))
            fail("index formula mismatch");
        if (d.nu_sum() + d.mu < 1)
            fail("sum nu + mu < 1");
        if (d.nu[0] != 0)
            fail("nu_0 != 0");
        if (d.n[0] != 0)
            fail("n_0 != 0");
        for (long i = 0; i < p; ++i) {
            if (i + 1 < p && d.nu[i] > d.nu[i + 1])
                fail("nu not non-decreasing");
            if (d.n[i] < 0 || d.n[i] > d.nu[i])
                fail("n_i outside [0, nu_i]");
            if (i <= p - 2 && d.nu[i] >= (long)pr.e_K)
                fail("nu_s >= e_K for s <= p-2");
        }
        if (d.nu[p - 1] > (long)pr.e_K)
            fail("nu_{p-1} > e_K");
        const bool a_divides = (p - 1) % (long)pr.a == 0;
        if (a_divides) {
            if (!fr.free)
                fail("a | p-1 but not free");
            if (d.mu != 0)
                fail("a | p-1 but mu != 0");
            for (long i = 0; i < p; ++i)
                if (d.nu[i] != i * pr.t0 + (i * (long)pr.a) / (p - 1))
                    fail("a | p-1 nu closed form violated");
        }
        if (!pr.almost_maximal && fr.free && !a_divides)
            fail("free and not almost-maximal forces a | p-1");
    }
    if (pr.t == 1 && v != (long)pr.f_K)
        fail("t = 1 must give v_p(m) = f_K");
    return bad;
}

SweepResult sweep_profiles(unsigned long p, unsigned e_max, unsigned f_K) {
    SweepResult out;
    for (unsigned e = 1; e <= e_max; ++e) {
        const long tmax = (long)e * (long)p / ((long)p - 1);
        for (long t = 1; t <= tmax; ++t) {
            if (t % (long)p == 0 && t * ((long)p - 1) != (long)e * (long)p)
                continue; // jumps divisible by p only occur at the maximum
            const RamificationProfile pr = profile_from_invariants(p, e, f_K, t);
            SweepRow row;
            row.e = e;
            row.t = t;
            row.a = pr.a;
            row.t0 = pr.t0;
            if (pr.a != 0) {
                const NuData d = nu_data(pr);
                row.nu = d.nu;
                row.mu = d.mu;
                row.sum_n = d.n_sum();
            } else {
                row.sum_n = (long)p * e * f_K / 2;
            }
            row.v_p_m = minimal_index_cyclic_p(pr);
            row.free = freeness_cyclic_p(pr).free;
            row.almost_maximal = pr.almost_maximal;
            row.bound = general_bound(p, pr.e_rel, f_K, e * (unsigned)p * f_K, pr.n).bound;
            out.rows.push_back(std::move(row));
            const auto bad = formula_invariant_violations(pr);
            out.violations.insert(out.violations.end(), bad.begin(), bad.end());
        }
    }
    return out;
}

json sweep_to_json(const SweepResult& s) {
    json rows = json::array();
    for (const auto& r : s.rows) {
        json j;
        j["e"] = r.e;
        j["t"] = r.t;
        j["a"] = r.a;
        j["t0"] = r.t0;
        j["nu"] = r.nu;
        j["mu"] = r.mu;
        j["v_p_m"] = r.v_p_m;
        j["sum_n"] = r.sum_n;
        j["free"] = r.free;
        j["almost_maximal"] = r.almost_maximal;
        j["bound"] = rational_to_json(r.bound);
        rows.push_back(j);
    }
    return json{{"rows", rows}, {"violations", s.violations}};
}

std::vector<CatalogOutcome> verify_catalog(const AnalysisOptions& opts, bool inject_mismatch,
                                           const std::string& filter) {
    std::vector<CatalogOutcome> out;
    bool corrupted = false;
    for (const CatalogEntry& entry : builtin_catalog()) {
        if (!filter.empty() && entry.name != filter)
            continue;
        long expected_v = entry.expected_v_p_m;
        if (inject_mismatch && !corrupted) {
            expected_v += 1;
            corrupted = true;
        }
        AnalysisOptions o = opts;
        o.with_oracle = true;
        CatalogOutcome oc;
        oc.name = entry.name;
        const ReportDocument doc = analyze(entry.spec, o);
        std::ostringstream detail;
        bool pass = true;
        const auto check = [&](const char* what, long got, long want) {
            detail << what << "=" << got << " (expected " << want << ") ";
            if (got != want)
                pass = false;
        };
        check("t", doc.profile.t, entry.expected_t);
        check("oracle_v", doc.oracle->v_p_m, expected_v);
        if (doc.formulas.v_p_m)
            check("formula_v", *doc.formulas.v_p_m, expected_v);
        else if (!doc.profile.tame)
            pass = false;
        check("free", doc.oracle->free_over_assoc ? 1 : 0, entry.expected_free ? 1 : 0);
        if (entry.expected_assoc_v_K)
            check("assoc_vK", doc.oracle->assoc.v_K_index, *entry.expected_assoc_v_K);
        if (entry.expected_max_order_v_p) {
            if (doc.formulas.v_p_maximal_order_index)
                check("max_order_v", *doc.formulas.v_p_maximal_order_index,
                      *entry.expected_max_order_v_p);
            else
                pass = false;
        }
        if (!doc.agree) {
            pass = false;
            detail << "formula/oracle disagreement ";
        }
        oc.pass = pass;
        oc.detail = detail.str();
        out.push_back(std::move(oc));
    }
    return out;
}

} // namespace galindex
