#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cocycle.hpp"
#include "hopf.hpp"
#include "rmatrix.hpp"
#include "scalar.hpp"
#include "solver.hpp"

// File formats. Group elements are enumerated lexicographically in their exponent
// vectors (last coordinate fastest), which is the Elem order. Scalars are [num, den]
// for exp(2 pi i num/den), the literal 0, or {"order": N, "coeffs": [[p, q], ...]}.
namespace hopfz2::io {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json root_to_json(const RootOfUnity& r) { return json::array({r.num(), r.den()}); }

inline RootOfUnity root_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw FormatError("expected a root of unity [num, den], got " + j.dump());
  long den = j[1].get<long>();
  if (den <= 0) throw FormatError("root of unity denominator must be positive: " + j.dump());
  return RootOfUnity(j[0].get<long>(), den);
}

namespace detail {

inline json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}
inline mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw FormatError("bad integer " + j.dump());
    return z;
  }
  throw FormatError("expected an integer, got " + j.dump());
}

}  // namespace detail

inline json scalar_to_json(const Cyclotomic& c) {
  if (c.is_zero()) return 0;
  if (auto r = c.as_root_of_unity()) return root_to_json(*r);
  json coeffs = json::array();
  for (const auto& q : c.coeffs())
    coeffs.push_back(json::array({detail::integer_to_json(q.get_num()), detail::integer_to_json(q.get_den())}));
  return json{{"order", c.order()}, {"coeffs", coeffs}};
}

inline Cyclotomic scalar_from_json(const json& j) {
  if (j.is_number_integer() && j.get<long>() == 0) return Cyclotomic();
  if (j.is_array()) return Cyclotomic(root_from_json(j));
  if (j.is_object() && j.contains("order") && j.contains("coeffs")) {
    int order = j.at("order").get<int>();
    if (order < 1) throw FormatError("cyclotomic order must be positive");
    std::vector<Rational> c;
    for (const auto& pq : j.at("coeffs")) {
      if (!pq.is_array() || pq.size() != 2) throw FormatError("expected [p, q], got " + pq.dump());
      mpz_class den = detail::integer_from_json(pq[1]);
      if (den == 0) throw FormatError("zero denominator");
      Rational q(detail::integer_from_json(pq[0]), den);
      q.canonicalize();
      c.push_back(q);
    }
    if (static_cast<int>(c.size()) > order) throw FormatError("more coefficients than the order");
    return Cyclotomic::from_coeffs(order, c);
  }
  throw FormatError("unrecognized scalar " + j.dump());
}

// {"group": [orders], "action": [images], "sigma": [...], "tau": [[...]], "presentation"?: {"a", "s"}}
inline json data_to_json(const ExtensionData& d) {
  const auto& G = d.group();
  json j;
  j["group"] = G.factor_orders();
  j["action"] = d.action().images();
  json sigma = json::array(), tau = json::array();
  for (Elem g = 0; g < d.size(); ++g) {
    sigma.push_back(root_to_json(d.sigma(g)));
    json row = json::array();
    for (Elem h = 0; h < d.size(); ++h) row.push_back(root_to_json(d.tau(g, h)));
    tau.push_back(row);
  }
  j["sigma"] = sigma;
  j["tau"] = tau;
  if (d.has_presentation()) {
    const auto& P = d.presentation();
    json s = json::array();
    for (Elem e : P.s) s.push_back(G.element(e));
    j["presentation"] = {{"a", G.element(P.a)}, {"s", s}};
  }
  return j;
}

inline ExtensionData data_from_json(const json& j) {
  try {
    auto orders = j.at("group").get<std::vector<int>>();
    FiniteAbelianGroup G(orders);
    auto images = j.at("action").get<std::vector<GroupElement>>();
    for (const auto& e : images)
      if (static_cast<int>(e.size()) != G.rank()) throw FormatError("action image has wrong rank");
    const auto& js = j.at("sigma");
    const auto& jt = j.at("tau");
    if (!js.is_array() || static_cast<int>(js.size()) != G.size()) throw FormatError("sigma must have |G| entries");
    if (!jt.is_array() || static_cast<int>(jt.size()) != G.size()) throw FormatError("tau must have |G| rows");
    std::vector<RootOfUnity> sigma, tau;
    for (const auto& v : js) sigma.push_back(root_from_json(v));
    for (const auto& row : jt) {
      if (!row.is_array() || static_cast<int>(row.size()) != G.size()) throw FormatError("tau rows must have |G| entries");
      for (const auto& v : row) tau.push_back(root_from_json(v));
    }
    ExtensionData d(G, Involution(G, images), sigma, tau);
    if (j.contains("presentation") && d.has_presentation()) {
      const auto& p = j.at("presentation");
      std::vector<Elem> s;
      for (const auto& e : p.at("s")) s.push_back(G.index(e.get<GroupElement>()));
      d = d.with_presentation(G.index(p.at("a").get<GroupElement>()), s);
    }
    return d;
  } catch (const json::exception& e) {
    throw FormatError(std::string("data file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("data file: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline ExtensionData load_data(const std::string& path) { return data_from_json(read_json_file(path)); }

// 64-bit FNV-1a over the compact canonical serialization of the data tables.
inline std::string fingerprint(const ExtensionData& d) {
  json j = data_to_json(d);
  j.erase("presentation");
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace detail {

inline json table_to_json(const std::vector<Cyclotomic>& t, int rows, int cols) {
  json out = json::array();
  for (int i = 0; i < rows; ++i) {
    json row = json::array();
    for (int k = 0; k < cols; ++k) row.push_back(scalar_to_json(t[static_cast<std::size_t>(i) * cols + k]));
    out.push_back(row);
  }
  return out;
}
inline std::vector<Cyclotomic> table_from_json(const json& j, int rows, int cols, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw FormatError(name + " must have " + std::to_string(rows) + " rows");
  std::vector<Cyclotomic> t;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw FormatError(name + " rows must have " + std::to_string(cols) + " entries");
    for (const auto& v : row) t.push_back(scalar_from_json(v));
  }
  return t;
}

}  // namespace detail

// Trivial: w1 is |G| x |G| over Elem order. Non-trivial: w1 S x S, w2 S x T,
// w3 T x S, w4 T x T, with S and T in ascending Elem order.
inline json rmatrix_to_json(const RMatrix& R) {
  json j;
  j["form"] = R.nontrivial ? "nontrivial" : "trivial";
  if (!R.nontrivial) {
    j["w1"] = detail::table_to_json(R.w1, R.nG, R.nG);
    return j;
  }
  j["w1"] = detail::table_to_json(R.w1, R.nS, R.nS);
  j["w2"] = detail::table_to_json(R.w2, R.nS, R.nT);
  j["w3"] = detail::table_to_json(R.w3, R.nT, R.nS);
  j["w4"] = detail::table_to_json(R.w4, R.nT, R.nT);
  return j;
}

inline RMatrix rmatrix_from_json(const ExtensionData& d, const json& j) {
  try {
    const std::string form = j.at("form").get<std::string>();
    RMatrix R;
    R.nG = d.size();
    if (form == "trivial") {
      R.w1 = detail::table_from_json(j.at("w1"), R.nG, R.nG, "w1");
      return R;
    }
    if (form != "nontrivial") throw FormatError("form must be trivial or nontrivial");
    R.nontrivial = true;
    R.nS = static_cast<int>(d.S().size());
    R.nT = static_cast<int>(d.T().size());
    R.w1 = detail::table_from_json(j.at("w1"), R.nS, R.nS, "w1");
    R.w2 = detail::table_from_json(j.at("w2"), R.nS, R.nT, "w2");
    R.w3 = detail::table_from_json(j.at("w3"), R.nT, R.nS, "w3");
    R.w4 = detail::table_from_json(j.at("w4"), R.nT, R.nT, "w4");
    return R;
  } catch (const json::exception& e) {
    throw FormatError(std::string("R-matrix file: ") + e.what());
  }
}

inline RMatrix load_rmatrix(const ExtensionData& d, const std::string& path) {
  return rmatrix_from_json(d, read_json_file(path));
}

inline json tuple_to_json(const SolutionTuple& t) {
  json alpha = json::array();
  for (const auto& row : t.alpha) {
    json r = json::array();
    for (const auto& v : row) r.push_back(root_to_json(v));
    alpha.push_back(r);
  }
  json beta = json::array(), gamma = json::array();
  for (const auto& v : t.beta) beta.push_back(root_to_json(v));
  for (const auto& v : t.gamma) gamma.push_back(root_to_json(v));
  return {{"kind", t.kind == TupleKind::general ? "general" : "special"},
          {"alpha", alpha},
          {"beta", beta},
          {"gamma", gamma},
          {"delta", root_to_json(t.delta)}};
}

// Dense coefficient matrix M with R = sum M[i][j] b_i (x) b_j over the basis index 2g + eps.
inline std::vector<std::vector<Cyclotomic>> dense_matrix(const ExtensionData& d, const RMatrix& R) {
  HopfAlgebra H(d, R.order());
  TensorElement t = to_tensor(H, R);
  const int D = H.dim();
  std::vector<std::vector<Cyclotomic>> M(D, std::vector<Cyclotomic>(D));
  for (const auto& [key, c] : t.terms()) {
    Slots s = t.unpack(key);
    M[s[0]][s[1]] = c;
  }
  return M;
}

inline json dense_matrix_json(const ExtensionData& d, const RMatrix& R) {
  json out = json::array();
  for (const auto& row : dense_matrix(d, R)) {
    json r = json::array();
    for (const auto& c : row) r.push_back(scalar_to_json(c));
    out.push_back(r);
  }
  return out;
}

// Floating approximation of the w-tables as [re, im] pairs; for inspection only.
inline json complex_tables_json(const RMatrix& R) {
  auto conv = [](const std::vector<Cyclotomic>& t, int rows, int cols) {
    json out = json::array();
    for (int i = 0; i < rows; ++i) {
      json row = json::array();
      for (int k = 0; k < cols; ++k) {
        auto z = t[static_cast<std::size_t>(i) * cols + k].to_complex();
        row.push_back(json::array({z.real(), z.imag()}));
      }
      out.push_back(row);
    }
    return out;
  };
  json j;
  j["approximation"] = "floating point, not authoritative";
  j["form"] = R.nontrivial ? "nontrivial" : "trivial";
  if (!R.nontrivial) {
    j["w1"] = conv(R.w1, R.nG, R.nG);
    return j;
  }
  j["w1"] = conv(R.w1, R.nS, R.nS);
  j["w2"] = conv(R.w2, R.nS, R.nT);
  j["w3"] = conv(R.w3, R.nT, R.nS);
  j["w4"] = conv(R.w4, R.nT, R.nT);
  return j;
}

}  // namespace hopfz2::io
