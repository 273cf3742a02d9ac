// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hopfz2/hopfz2.hpp"
#include "oracles.hpp"

using namespace hopfz2;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool certified(const ExtensionData& d, const RMatrix& R) {
  return verify_quasitriangular(d, R).ok() && verify_qybe(d, R).ok() && is_phi_symmetric(d, R);
}

std::set<std::string> keys(const ExtensionData& d, const std::vector<RMatrix>& a, const std::vector<RMatrix>& b) {
  const int N = std::lcm(common_order(d, a), common_order(d, b));
  return oracle::key_set(a, N);
}

bool same_set(const ExtensionData& d, const std::vector<RMatrix>& a, const std::vector<RMatrix>& b) {
  return a.size() == b.size() && keys(d, a, b) == keys(d, b, a);
}

std::vector<RMatrix> rs_of(const std::vector<Classified>& cl) {
  std::vector<RMatrix> out;
  for (const auto& c : cl) out.push_back(c.R);
  return out;
}

// 1. Hopf axioms on the Kac-Paljutkin algebra.
void c1(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  auto d = make_kac_paljutkin();
  Report r = verify_hopf_axioms(d);
  double t = seconds_since(t0);
  o.require(2 * d.size() == 8, "dimension 8");
  o.require(r.ok(), r.ok() ? "" : r.first_failure()->name + " " + r.first_failure()->witness);
  o.require(t < 10.0, "runtime < 10 s");
  o.detail << "dim=" << 2 * d.size() << " checks=" << r.checks().size() << " t=" << t << "s";
}

// 2. K8 classification: beta1 = 1, beta2 in {i, -i}, two deltas each.
void c2(Outcome& o) {
  auto d = make_kac_paljutkin();
  auto cl = classify_K(d);
  o.require(cl.size() == 4, "count 4");
  std::map<RootOfUnity, int> per_beta2;
  for (const auto& c : cl) {
    o.require(c.params.at(0).is_one(), "beta1 = 1");
    const auto& b2 = c.params.at(1);
    o.require(b2 == RootOfUnity(1, 4) || b2 == RootOfUnity(3, 4), "beta2 = +-i");
    ++per_beta2[b2];
    o.require(certified(d, c.R), "verify_quasitriangular, verify_qybe, is_phi_symmetric");
  }
  o.require(per_beta2.size() == 2 && per_beta2.begin()->second == 2 && per_beta2.rbegin()->second == 2,
            "two deltas per beta2");
  o.detail << "count=" << cl.size() << " all certified";
}

// 3. K(8n), n = 1..3: count 4n and agreement with the general enumerator.
void c3(Outcome& o) {
  for (int n = 1; n <= 3; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    auto d = make_family(kp_spec(n));
    auto cl = classify_K(d);
    auto en = enumerate_all_nontrivial(d);
    double t = seconds_since(t0);
    const std::string tag = "n=" + std::to_string(n);
    o.require(cl.size() == static_cast<std::size_t>(4 * n), tag + " count 4n");
    o.require(en.diagnostics.ok(), tag + " enumeration diagnostics");
    o.require(same_set(d, rs_of(cl), en.rmatrices), tag + " classify_K == enumerate_all_nontrivial");
    for (const auto& c : cl) o.require(certified(d, c.R), tag + " certified");
    if (n == 3) o.require(t < 120.0, "runtime < 2 min at n=3");
    o.detail << tag << ":" << cl.size() << " (" << t << "s) ";
  }
}

// 4. A(8n) preset, n = 1, 2.
void c4(Outcome& o) {
  for (int n = 1; n <= 2; ++n) {
    auto d = make_preset("A8n:n=" + std::to_string(n) + ":paper").data;
    const std::string tag = "n=" + std::to_string(n);
    o.require(validate(d).ok(), tag + " validates");
    o.require(verify_hopf_axioms(d).ok(), tag + " Hopf axioms");
    auto cl = classify_A(d);
    o.require(cl.size() == static_cast<std::size_t>(4 * n), tag + " count 4n");
    o.require(same_set(d, rs_of(cl), enumerate_all_nontrivial(d).rmatrices), tag + " matches enumeration");
    for (const auto& c : cl) o.require(certified(d, c.R), tag + " certified");
    o.detail << tag << ":" << cl.size() << " ";
  }
}

const std::vector<std::string> kBijectionPresets{"kac-paljutkin", "K8n:n=2:kp", "K8n:n=1:untwisted", "A8n:n=1:paper",
                                                 "A8n:n=2:paper"};

// 5. w4 -> quasitriangular function -> rebuild, for every auxiliary choice.
void c5(Outcome& o) {
  long rebuilt = 0, structures = 0;
  for (const auto& name : kBijectionPresets) {
    auto d = make_preset(name).data;
    for (const auto& R : enumerate_all_nontrivial(d).rmatrices) {
      ++structures;
      QTFunction w = extract_w4(R);
      QTReport q = is_qt_function(d, w);
      o.require(q.definition.ok() && q.reduced.ok() && q.agree, name + " is_qt_function");
      for (Elem t0 : d.T())
        for (Elem t1 : d.T())
          for (Elem t2 : d.T()) {
            o.require(rebuild_from_w4(d, w, t0, t1, t2) == R, name + " rebuild reproduces R");
            ++rebuilt;
          }
    }
  }
  o.detail << structures << " structures, " << rebuilt << " rebuilds";
}

// 6. verify(R) and verify(R_phi) agree; R_phi_phi = R.
void c6(Outcome& o) {
  long checked = 0;
  std::vector<std::pair<ExtensionData, RMatrix>> cases;
  for (const auto& name : kBijectionPresets) {
    auto d = make_preset(name).data;
    for (const auto& R : enumerate_all_nontrivial(d).rmatrices) cases.emplace_back(d, R);
    for (const auto& R : enumerate_trivial(d)) cases.emplace_back(d, R);
  }
  const std::size_t valid = cases.size();
  // 20 mutated non-examples, 10 each from two data sets, spread over all four tables
  for (const char* name : {"kac-paljutkin", "A8n:n=1:paper"}) {
    auto d = make_preset(name).data;
    auto muts = oracle::single_mutations(enumerate_all_nontrivial(d).rmatrices.at(1));
    for (std::size_t i = 0; i < 10; ++i) cases.emplace_back(d, muts[(i * muts.size()) / 10].second);
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& [d, R] = cases[i];
    RMatrix phi = phi_transform(d, R);
    bool a = verify_quasitriangular(d, R).ok(), b = verify_quasitriangular(d, phi).ok();
    o.require(a == b, "verdicts agree on case " + std::to_string(i));
    o.require(i < valid ? a : !a, "case " + std::to_string(i) + (i < valid ? " valid" : " is a non-example"));
    o.require(phi_transform(d, phi) == R, "R_phi_phi = R on case " + std::to_string(i));
    ++checked;
  }
  o.detail << valid << " valid + " << checked - valid << " mutated";
}

// 7. Ratios of special solutions on K8 are general solutions.
void c7(Outcome& o) {
  auto d = make_kac_paljutkin();
  const auto& P = d.presentation();
  auto un = d.untwisted();
  auto special = enumerate_all_nontrivial(d).rmatrices;
  o.require(special.size() == 4, "four special solutions");
  long pairs = 0;
  for (const auto& A : special)
    for (const auto& B : special) {
      RMatrix q = pointwise_ratio(A, B);
      auto t = tuple_from_rmatrix(d, P, q, TupleKind::general);
      o.require(t.has_value() && check_general_conditions(P, *t).ok(), "ratio satisfies the general conditions");
      o.require(verify_quasitriangular(un, q).ok(), "ratio verifies on the untwisted algebra");
      ++pairs;
    }
  o.detail << pairs << " ordered pairs";
}

// 8. Grid oracle over mu_16 at dimension 8.
void c8(Outcome& o) {
  for (const char* name : {"kac-paljutkin", "K8n:n=1:untwisted", "A8n:n=1:paper", "A8n:n=1:untwisted"}) {
    auto d = make_preset(name).data;
    auto t0 = std::chrono::steady_clock::now();
    auto grid = oracle::brute_force_nontrivial(d, 16);
    auto en = enumerate_all_nontrivial(d).rmatrices;
    o.require(same_set(d, grid.found, en), std::string(name) + " grid == enumeration");
    o.require(grid.lr_survivors == static_cast<long>(grid.found.size()), std::string(name) + " l/r filter exact");
    o.detail << name << ":" << grid.found.size() << "/" << grid.candidates << " (" << seconds_since(t0) << "s) ";
  }
}

// Every involutive non-identity automorphism of G with |S| = |T| admits b.
bool size_condition_forces_b(const FiniteAbelianGroup& G, long& actions) {
  std::vector<std::vector<Elem>> choices(G.rank());
  for (int i = 0; i < G.rank(); ++i)
    for (Elem g = 0; g < G.size(); ++g)
      if (G.pow(g, G.factor_orders()[i]) == G.identity()) choices[i].push_back(g);
  std::vector<std::size_t> idx(G.rank(), 0);
  for (;;) {
    std::vector<GroupElement> images;
    for (int i = 0; i < G.rank(); ++i) images.push_back(G.element(choices[i][idx[i]]));
    Involution x(G, images);
    auto is = x.check(G);
    if (!is.not_well_defined && !is.not_automorphism && !is.not_involution && !is.identity) {
      auto [S, T] = split_fixed(G, x);
      if (S.size() == T.size()) {
        ++actions;
        if (!find_b(G, x).b) return false;
      }
    }
    int i = 0;
    while (i < G.rank() && ++idx[i] == choices[i].size()) idx[i++] = 0;
    if (i == G.rank()) break;
  }
  return true;
}

// 9. Negative controls.
void c9(Outcome& o) {
  auto z3 = oracle::z3_inversion();
  auto r3 = enumerate_all_nontrivial(z3);
  o.require(validate(z3).ok(), "Z3 fixture is valid data");
  o.require(r3.rmatrices.empty() && r3.diagnostics.failed("(i) |S|=|T|") && r3.diagnostics.failed("(ii) b exists"),
            "Z3 inversion: empty with (i)/(ii) diagnostics");
  auto z24 = oracle::z2_4_asymmetric();
  auto r24 = enumerate_all_nontrivial(z24);
  o.require(validate(z24).ok(), "Z2^4 fixture is valid data");
  o.require(r24.rmatrices.empty() && r24.diagnostics.failed("(iii) tau symmetric on S") &&
                r24.diagnostics.passed("(i) |S|=|T|") && r24.diagnostics.passed("(ii) b exists"),
            "Z2^4 asymmetric tau: empty with only the (iii) diagnostic");
  // (ii) cannot fail while (i) holds; confirm on every small group
  long actions = 0;
  for (const auto& orders : std::vector<std::vector<int>>{
           {4}, {6}, {8}, {12}, {16}, {2, 2}, {4, 2}, {6, 2}, {8, 2}, {4, 4}, {2, 2, 2}, {4, 2, 2}, {2, 2, 2, 2}})
    o.require(size_condition_forces_b(FiniteAbelianGroup(orders), actions), "(i) forces (ii)");
  o.detail << "(i)=>(ii) on " << actions << " actions; ";
  long mutations = 0;
  for (const char* name : {"kac-paljutkin", "A8n:n=1:paper", "K8n:n=2:kp"}) {
    auto d = make_preset(name).data;
    for (const auto& R : enumerate_all_nontrivial(d).rmatrices)
      for (const auto& [what, m] : oracle::single_mutations(R)) {
        Report r = verify_quasitriangular(d, m);
        o.require(!r.ok() && !r.first_failure()->witness.empty(), std::string(name) + " mutation " + what);
        ++mutations;
      }
  }
  o.detail << mutations << " mutations caught";
}

Cyclotomic random_element(std::mt19937_64& rng, int order) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), keep(0, 1);
  std::vector<Rational> c(order);
  for (auto& q : c)
    if (keep(rng)) {
      q = Rational(num(rng), den(rng));
      q.canonicalize();
    }
  return Cyclotomic::from_coeffs(order, c);
}

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-6 * (1 + std::abs(b)); }

// 10. Identity suites and randomized field axioms.
void c10(Outcome& o) {
  long identity_cases = 0;
  for (const char* name : {"kac-paljutkin", "K8n:n=2:kp", "K8n:n=3:kp", "K8n:n=2:untwisted", "A8n:n=1:paper",
                           "A8n:n=2:paper", "A8n:n=3:untwisted"}) {
    auto d = make_preset(name).data;
    for (Elem t0 : d.T()) {
      o.require(check_twist_identity(d, t0).ok(), std::string(name) + " eta/tau twist identity");
      identity_cases += static_cast<long>(d.S().size() * d.S().size());
    }
    o.require(check_p_constant_identity(d, d.presentation()).ok(), std::string(name) + " P-constant identity");
    identity_cases += d.presentation().s_size();
  }
  o.detail << identity_cases << " identity instances; ";

  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<int> pickN(1, 24);
  const int cases = 12000;
  for (int k = 0; k < cases; ++k) {
    const int N = pickN(rng);
    std::vector<int> divisors;
    for (int m = 1; m <= N; ++m)
      if (N % m == 0) divisors.push_back(m);
    auto sub = [&] { return divisors[std::uniform_int_distribution<std::size_t>(0, divisors.size() - 1)(rng)]; };
    Cyclotomic a = random_element(rng, sub()), b = random_element(rng, sub()), c = random_element(rng, sub());
    const std::string tag = "N=" + std::to_string(N) + " case " + std::to_string(k);
    o.require((a + b) + c == a + (b + c), tag + " additive associativity");
    o.require(a + b == b + a, tag + " additive commutativity");
    o.require((a * b) * c == a * (b * c), tag + " multiplicative associativity");
    o.require(a * b == b * a, tag + " multiplicative commutativity");
    o.require(a * (b + c) == a * b + a * c, tag + " distributivity");
    o.require((a - a).is_zero() && a + Cyclotomic() == a && a * Cyclotomic(1) == a, tag + " identities");
    if (!a.is_zero()) {
      o.require((a * a.inv()).is_one(), tag + " inverse");
      o.require((b / a) * a == b, tag + " division");
    }
    o.require(a.lift(N * 2) == a, tag + " lift preserves value");
    // floating oracle, independent of the exact arithmetic
    o.require(close((a * b).to_complex(), a.to_complex() * b.to_complex()), tag + " product matches C");
    o.require(close((a + b).to_complex(), a.to_complex() + b.to_complex()), tag + " sum matches C");
  }
  o.detail << cases << " randomized field cases (orders <= 24)";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 Kac-Paljutkin Hopf axioms", c1},
      {"2 K8 classification", c2},
      {"3 K(8n) counts n=1..3", c3},
      {"4 A(8n) preset n=1,2", c4},
      {"5 quasitriangular-function bijection", c5},
      {"6 phi-transform", c6},
      {"7 division structure", c7},
      {"8 completeness oracle (dim 8)", c8},
      {"9 negative controls", c9},
      {"10 identity suites and field axioms", c10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << "[" << name << "] " << o.detail.str() << " ("
              << seconds_since(t0) << "s)" << std::endl;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " criteria failed" : "acceptance: all passed")
            << std::endl;
  return failed ? 1 : 0;
}
