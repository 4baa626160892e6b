#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "galindex/cli.hpp"
#include "galindex/report.hpp"

using namespace galindex;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, double time_limit_s,
               const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = error.empty();
    std::ostringstream note;
    if (!pass)
        note << " [" << error << "]";
    if (time_limit_s > 0 && secs > time_limit_s) {
        pass = false;
        note << " [runtime " << secs << "s exceeds " << time_limit_s << "s]";
    }
    if (!pass)
        ++failures;
    std::printf("%s criterion %d: %s (%.2fs)%s\n", pass ? "PASS" : "FAIL", number,
                what.c_str(), secs, note.str().c_str());
    std::fflush(stdout);
}

struct Expect {
    std::string detail;
    void eq(long got, long want, const char* what) {
        if (got != want) {
            std::ostringstream os;
            os << what << ": got " << got << ", expected " << want;
            throw std::runtime_error(os.str());
        }
    }
    void truth(bool ok, const char* what) {
        if (!ok)
            throw std::runtime_error(std::string("expected: ") + what);
    }
};

const CatalogEntry& entry(const std::string& name) {
    for (const auto& e : builtin_catalog())
        if (e.name == name)
            return e;
    throw std::runtime_error("missing catalog entry " + name);
}

// several criteria revisit the same extensions, so analyses are memoized
ReportDocument analyze_entry(const std::string& name, unsigned threads = 0,
                             unsigned precision = 0) {
    static std::map<std::string, ReportDocument> memo;
    const std::string key =
        name + "/" + std::to_string(threads) + "/" + std::to_string(precision);
    const auto hit = memo.find(key);
    if (hit != memo.end())
        return hit->second;
    AnalysisOptions opts;
    opts.with_oracle = true;
    opts.threads = threads;
    opts.precision = precision;
    const ReportDocument doc = analyze(entry(name).spec, opts);
    memo.emplace(key, doc);
    return doc;
}

} // namespace

int main() {
    criterion(1, "quadratic catalog over Q_2: m = 2 by formula and oracle", 5.0, [] {
        Expect ex;
        for (const char* name : {"q2-sqrt-minus1", "q2-sqrt2", "q2-sqrt-minus2", "q2-sqrt3"}) {
            const ReportDocument doc = analyze_entry(name);
            ex.truth(doc.formulas.v_p_m.has_value(), "formula applies");
            ex.eq(*doc.formulas.v_p_m, 1, (std::string(name) + " formula v_2(m)").c_str());
            ex.eq(doc.oracle->v_p_m, 1, (std::string(name) + " oracle v_2(m)").c_str());
            ex.truth(doc.agree, "formula and oracle agree");
        }
    });

    criterion(2, "Q_2(zeta_8) over Q_2(zeta_8 + 1/zeta_8): m = 2, [M:O_K[G]] = 4, free",
              30.0, [] {
                  Expect ex;
                  const ReportDocument doc = analyze_entry("q2-zeta8-over-real-subfield");
                  ex.eq(doc.profile.t, 1, "jump");
                  const NuData d = nu_data(doc.profile);
                  ex.eq(d.nu[1], 1, "nu_1");
                  ex.eq(*doc.formulas.v_p_m, 1, "formula v_2(m)");
                  ex.eq(doc.oracle->v_p_m, 1, "oracle v_2(m)");
                  ex.eq(doc.oracle->v_p_assoc_index, 1, "oracle associated-order index");
                  ex.truth(doc.formulas.v_p_maximal_order_index.has_value(),
                           "maximal-order formula applies");
                  ex.eq(*doc.formulas.v_p_maximal_order_index, 2, "maximal-order index");
                  ex.truth(doc.oracle->free_over_assoc, "free over the associated order");
                  ex.truth(doc.agree, "formula and oracle agree");
              });

    criterion(3, "cyclic cubic x^3 - 3x^2 + 3 over Q_3: t = 1, m = 3, free", 60.0, [] {
        Expect ex;
        const ReportDocument doc = analyze_entry("q3-cyclic-cubic");
        ex.eq(doc.profile.t, 1, "jump from the filtration");
        ex.eq(*doc.formulas.v_p_m, 1, "formula v_3(m)");
        ex.eq(doc.oracle->v_p_m, 1, "oracle v_3(m)");
        ex.truth(doc.oracle->free_over_assoc, "free (a = 1 divides 2)");
        ex.truth(doc.agree, "formula and oracle agree");
    });

    criterion(4, "Kummer cubic over Q_3(zeta_3): m = 27, maximal associated order", 600.0,
              [] {
                  Expect ex;
                  const ReportDocument doc = analyze_entry("q3-kummer-zeta3");
                  ex.eq(*doc.formulas.v_p_m, 3, "formula v_3(m)");
                  ex.eq(doc.oracle->v_p_m, 3, "oracle v_3(m)");
                  ex.truth(doc.oracle->classes_enumerated <= 531441,
                           "seeded enumeration stays within 3^12 classes");
                  ex.truth(doc.oracle->assoc.pivots == std::vector<long>{0, 1, 2},
                           "associated-order pivots are {0, 1, 2}");
                  ex.eq(doc.oracle->assoc.v_K_index, 3, "associated-order v_K index");
                  ex.truth(doc.oracle->free_over_assoc, "free over the associated order");
                  ex.eq(*doc.formulas.v_p_maximal_order_index, 3,
                        "maximal-order index equals v_p(m): the order is maximal");
                  ex.truth(doc.agree, "formula and oracle agree");
              });

    criterion(5, "formula sweep p in {2,3,5,7,11,13}, f <= 3, e <= 40: no violations",
              10.0, [] {
                  for (const unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul})
                      for (unsigned f = 1; f <= 3; ++f) {
                          const SweepResult s = sweep_profiles(p, 40, f);
                          if (!s.violations.empty())
                              throw std::runtime_error(s.violations.front());
                          if (s.rows.empty())
                              throw std::runtime_error("empty sweep");
                      }
              });

    criterion(6, "field-level structure: v_L((s-1)^i pi^a) = a + it and unit transition",
              120.0, [] {
                  Expect ex;
                  for (const char* name : {"q2-sqrt-minus1", "q2-sqrt3",
                                           "q2-zeta8-over-real-subfield", "q3-cyclic-cubic"}) {
                      const CatalogEntry& e = entry(name);
                      const TowerPtr tower = tower_of(e.spec, 32);
                      const GaloisLatticeModel m = build_lattice_model(tower, e.spec.base_cut);
                      const RamificationProfile pr = profile(m);
                      ex.truth(pr.a != 0, "catalog case with a != 0");
                      const long p = (long)pr.p;
                      // coordinates of (sigma - 1)^i pi_L^a
                      std::vector<TowerElement> v(m.n, m.tower->zero(m.base_level));
                      v[pr.a] = m.tower->one(m.base_level);
                      for (long i = 0; i <= p; ++i) {
                          const Val val = m.coordinate_valuation(v);
                          if (!val.exact)
                              throw std::runtime_error("uncertified valuation");
                          const long expected = i <= p - 1
                                                    ? (long)pr.a + i * pr.t
                                                    : (long)pr.e_K * p + pr.t + (long)pr.a;
                          ex.eq(val.value, expected, "v_L((sigma-1)^i pi_L^a)");
                          const auto w = m.action[1].apply(v);
                          for (unsigned k = 0; k < m.n; ++k)
                              v[k] = w[k] - v[k];
                      }
                      // transition matrix to pi_K^{-nu_i} (sigma-1)^i pi_L^a
                      const NuData d = nu_data(pr);
                      Matrix<TowerElement> trans(m.n, m.n, m.tower->zero(m.base_level));
                      std::vector<TowerElement> col(m.n, m.tower->zero(m.base_level));
                      col[pr.a] = m.tower->one(m.base_level);
                      for (long j = 0; j < p; ++j) {
                          for (unsigned i = 0; i < m.n; ++i)
                              trans.at(i, (size_t)j) = col[i].shift(-d.nu[j]);
                          const auto w = m.action[1].apply(col);
                          for (unsigned k = 0; k < m.n; ++k)
                              col[k] = w[k] - col[k];
                      }
                      ex.eq(det_valuation(trans), 0, "transition determinant valuation");
                  }
              });

    criterion(7, "global abelian: Q(zeta_9) gives v_3 = 2, Q(zeta_25) gives v_5 = 4", 5.0,
              [] {
                  Expect ex;
                  const auto a = global_abelian_valuation(6, {{3, {1, 2}}});
                  ex.eq(a.at(3), 2, "v_3(m) for degree 6");
                  const auto b = global_abelian_valuation(20, {{5, {1, 4}}});
                  ex.eq(b.at(5), 4, "v_5(m) for degree 20");
              });

    criterion(8, "byte-identical values at doubled precision and any parallelism", 1800.0,
              [] {
                  for (const char* name :
                       {"q2-sqrt-minus1", "q2-sqrt2", "q2-sqrt-minus2", "q2-sqrt3",
                        "q2-zeta8-over-real-subfield", "q3-cyclic-cubic", "q3-kummer-zeta3"}) {
                      const std::string base =
                          report_values_json(analyze_entry(name, 0, 0)).dump();
                      const std::string doubled =
                          report_values_json(analyze_entry(name, 0, 64)).dump();
                      const std::string serial =
                          report_values_json(analyze_entry(name, 1, 0)).dump();
                      if (base != doubled)
                          throw std::runtime_error(std::string(name) +
                                                   ": doubled precision changed the report");
                      if (base != serial)
                          throw std::runtime_error(std::string(name) +
                                                   ": thread count changed the report");
                  }
              });

    if (failures == 0)
        std::printf("acceptance: all criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
