#pragma once

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "koopinv/koopman.hpp"
#include "koopinv/oracle.hpp"
#include "koopinv/parametric.hpp"
#include "koopinv/parse.hpp"
#include "koopinv/render.hpp"

namespace koopinv::cli {

// Exit code contract: 0 success, 1 usage/parse errors, 2 not a permutation
// (the verdict is still printed), 3 oracle cross-check mismatch.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNotPermutation = 2;
inline constexpr int kExitVerifyMismatch = 3;

namespace detail {

using nlohmann::json;

struct CommonOpts {
  std::uint64_t field = 0;
  std::uint32_t vars = 1;
  std::string poly;
  std::string map;
  std::string param;
  bool parametric = false;
  std::optional<std::int64_t> at;
  std::int64_t power = 1;
  std::string format = "text";
  bool verify = false;
  std::size_t max_space = kDefaultMaxCells;
};

inline void add_common(CLI::App* sub, CommonOpts& o, bool with_map, bool with_param) {
  sub->add_option("--field", o.field, "prime modulus p")->required();
  sub->add_option("--poly", o.poly, "polynomial expression ('-' reads stdin)");
  if (with_map) {
    sub->add_option("--vars", o.vars, "number of variables n");
    sub->add_option("--map", o.map, "map components 'expr; expr; ...' ('-' reads stdin)");
  }
  if (with_param) {
    auto* ppar = sub->add_option("--param", o.param, "parameter symbol (enables F_p(a) mode)");
    ppar->expected(0, 1);
    ppar->default_str("a");
    sub->add_option("--at", o.at, "specialize the parameter at this value");
  }
  sub->add_option("--format", o.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  sub->add_flag("--verify", o.verify, "cross-check the answer against the brute-force oracle");
  sub->add_option("--max-space", o.max_space, "cap on p^n table cells");
}

inline std::string read_source(const std::string& value, std::istream& in) {
  if (value != "-") return value;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline json ratfunc_json(const RationalFunc& r) {
  const RationalFunc d = display_reduced(r);
  return json{{"num", d.num().coeffs()}, {"den", d.den().coeffs()}};
}

template <ScalarField K>
json matrix_json(const Matrix<K>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::same_as<K, Fp>) {
        row.push_back(m.at(i, j).value());
      } else {
        row.push_back(ratfunc_json(m.at(i, j)));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <ScalarField K>
json alpha_json(const KoopmanDecomposition<K>& d) {
  auto one_chain = [](const std::vector<K>& alpha) {
    json arr = json::array();
    for (const auto& c : alpha) {
      if constexpr (std::same_as<K, Fp>) {
        arr.push_back(c.value());
      } else {
        arr.push_back(ratfunc_json(c));
      }
    }
    return arr;
  };
  if (d.chain_alpha.size() == 1) return one_chain(d.chain_alpha[0]);
  json arr = json::array();
  for (const auto& chain : d.chain_alpha) arr.push_back(one_chain(chain));
  return arr;
}

inline json factorization_json(const Factorization& f) {
  json factors = json::array();
  for (const auto& [poly, mult] : f.factors) {
    factors.push_back(json{{"coeffs", poly.coeffs()}, {"multiplicity", mult}});
  }
  return json{{"unit", f.unit.value()}, {"factors", std::move(factors)}};
}

template <ScalarField K>
json base_json(const CommonOpts& o, const std::string& input,
               const KoopmanDecomposition<K>& d, const PermutationCertificate<K>& cert) {
  json out{{"field", o.field}, {"nvars", d.map.nvars()}, {"input", input},
           {"dimension", d.dimension()}, {"matrix", matrix_json(d.M)},
           {"alpha", alpha_json(d)}, {"invertible", cert.invertible}};
  if constexpr (std::same_as<K, Fp>) {
    out["det"] = cert.det.value();
  } else {
    out["det"] = ratfunc_json(cert.det);
  }
  out["inverse"] = nullptr;
  return out;
}

/// Oracle cross-check of a plain (non-parametric) decomposition and its
/// inverse, mirroring what the dedicated verify subcommand reports.
inline bool oracle_check(const KoopmanDecomposition<Fp>& d, const PolyMap<Fp>* inverse,
                         std::size_t max_cells, std::ostream& err) {
  const bool brute = perm_check_bruteforce(d.map, max_cells);
  const auto cert = is_permutation(d);
  bool ok = true;
  if (brute != cert.invertible) {
    err << "verify: permutation verdict mismatch (subspace: " << cert.invertible
        << ", brute force: " << brute << ")\n";
    ok = false;
  }
  if (represent_map(d) != d.map) {
    err << "verify: representation round-trip failed\n";
    ok = false;
  }
  if (inverse && brute) {
    const PolyMap<Fp> truth = interpolate(inverse_table(d.map, max_cells));
    if (!compare_functions(*inverse, truth)) {
      err << "verify: inverse differs from interpolated brute-force inverse\n";
      ok = false;
    }
    const PolyMap<Fp> id = PolyMap<Fp>::identity(d.map.xfield(), d.map.nvars(),
                                                 d.map.xfield().one());
    if (inverse->compose(d.map) != id || d.map.compose(*inverse) != id) {
      err << "verify: composition with the inverse is not the identity\n";
      ok = false;
    }
  }
  return ok;
}

/// Exhaustive parametric cross-check: classification against brute force and,
/// at every invertible value, the specialized symbolic inverse against the
/// interpolated table inverse.
inline bool oracle_check_param(const ParamDecomposition& d, const ParamClassification& cls,
                               const InverseResult<RationalFunc>* inverse,
                               std::size_t max_cells, std::ostream& err) {
  const std::uint64_t p = d.koop.map.p();
  bool ok = true;
  for (std::uint64_t v = 0; v < p; ++v) {
    const Fp a0(v, p);
    const PolyMap<Fp> spec = specialize(d.koop.map, a0);
    const bool brute = perm_check_bruteforce(spec, max_cells);
    const Verdict verdict = cls.verdicts[v];
    if (verdict != Verdict::Undefined) {
      const bool claimed = verdict == Verdict::Invertible;
      if (claimed != brute) {
        err << "verify: classification at a = " << v << " disagrees with brute force\n";
        ok = false;
      }
    }
    if (inverse && verdict == Verdict::Invertible) {
      const PolyMap<Fp> g = specialize(inverse->inverse, a0);
      const PolyMap<Fp> truth = interpolate(inverse_table(spec, max_cells));
      if (!compare_functions(g, truth)) {
        err << "verify: specialized inverse at a = " << v << " differs from brute force\n";
        ok = false;
      }
    }
  }
  return ok;
}

struct Printer {
  std::ostream& out;
  bool json_mode;
  json doc;

  void emit_text(const std::string& line) {
    if (!json_mode) out << line << "\n";
  }
  void finish() {
    if (json_mode) out << doc.dump(2) << "\n";
  }
};

inline int run_plain(const std::string& kind, const CommonOpts& o, std::istream& in,
                     std::ostream& out, std::ostream& err) {
  const Field field(o.field);
  if (kind == "invert-map" && o.map.empty()) {
    err << "invert-map requires --map\n";
    return kExitUsage;
  }
  const bool is_map = kind == "invert-map" || (!o.map.empty() && o.poly.empty());
  PolyMap<Fp> map(field, {FuncPoly<Fp>::zero_poly(field, 1)});
  if (is_map) {
    map = parse_map<Fp>(read_source(o.map, in), field, o.vars);
  } else {
    map = PolyMap<Fp>(field, {parse_poly<Fp>(read_source(o.poly, in), field, 1)});
  }
  const std::string input = render_map(map);

  const auto d = build_invariant_subspace(map, o.max_space);
  const auto cert = is_permutation(d);
  Printer pr{out, o.format == "json", {}};
  pr.doc = base_json(o, input, d, cert);

  std::optional<PolyMap<Fp>> inverse;
  int code = kExitOk;

  if (kind == "invert" || kind == "invert-map") {
    if (!cert.invertible) {
      pr.emit_text("not a permutation (det M = 0)");
      code = kExitNotPermutation;
    } else {
      const auto inv = map.nvars() == 1 ? invert_univariate(d) : invert_map(d);
      inverse = inv.inverse;
      pr.doc["inverse"] = render_map(inv.inverse);
      pr.emit_text(render_map(inv.inverse));
    }
  } else if (kind == "koopman") {
    pr.emit_text("field: " + std::to_string(o.field));
    pr.emit_text("nvars: " + std::to_string(map.nvars()));
    pr.emit_text("input: " + input);
    pr.emit_text("dimension: " + std::to_string(d.dimension()));
    pr.emit_text("basis:");
    for (std::size_t i = 0; i < d.basis.size(); ++i) {
      pr.emit_text("  psi" + std::to_string(i + 1) + " = " + render_poly(d.basis[i]));
    }
    pr.emit_text("M:");
    for (std::size_t i = 0; i < d.M.rows(); ++i) {
      std::string row = "  [";
      for (std::size_t j = 0; j < d.M.cols(); ++j) {
        if (j) row += ", ";
        row += std::to_string(d.M.at(i, j).value());
      }
      pr.emit_text(row + "]");
    }
    if (d.chains.size() == 1) {
      std::string a = "alpha: [";
      for (std::size_t i = 0; i < d.alpha().size(); ++i) {
        if (i) a += ", ";
        a += std::to_string(d.alpha()[i].value());
      }
      pr.emit_text(a + "]");
    }
    pr.emit_text("det: " + std::to_string(cert.det.value()));
    pr.emit_text(std::string("invertible: ") + (cert.invertible ? "true" : "false"));
    if (!cert.invertible) code = kExitNotPermutation;
  } else if (kind == "power") {
    if (o.power < 0 && !cert.invertible) {
      pr.emit_text("not a permutation (det M = 0)");
      code = kExitNotPermutation;
    } else {
      const PolyMap<Fp> fk = map_power(d, o.power);
      pr.doc["power"] = o.power;
      pr.doc["result"] = render_map(fk);
      pr.emit_text(render_map(fk));
    }
  } else if (kind == "verify") {
    if (cert.invertible) {
      const auto inv = map.nvars() == 1 ? invert_univariate(d) : invert_map(d);
      inverse = inv.inverse;
      pr.doc["inverse"] = render_map(inv.inverse);
    }
    const bool ok = oracle_check(d, inverse ? &*inverse : nullptr, o.max_space, err);
    pr.doc["verified"] = ok;
    pr.emit_text(ok ? std::string("verify: OK (") + (cert.invertible ? "permutation" : "not a permutation") + ")"
                    : "verify: MISMATCH");
    pr.finish();
    return ok ? kExitOk : kExitVerifyMismatch;
  }

  if (o.verify && code == kExitOk) {
    if (!oracle_check(d, inverse ? &*inverse : nullptr, o.max_space, err)) {
      pr.finish();
      return kExitVerifyMismatch;
    }
  }
  pr.finish();
  return code;
}

inline int run_parametric(const std::string& kind, const CommonOpts& o, std::istream& in,
                          std::ostream& out, std::ostream& err) {
  const Field field(o.field);
  const std::string symbol = o.param.empty() ? "a" : o.param;
  ParamPolyMap map(field, {FuncPoly<RationalFunc>::zero_poly(field, 1)});
  if (!o.map.empty()) {
    map = parse_map<RationalFunc>(read_source(o.map, in), field, o.vars, symbol);
  } else {
    map = ParamPolyMap(field,
                       {parse_poly<RationalFunc>(read_source(o.poly, in), field, 1, symbol)});
  }
  const std::string input = render_map(map);

  const auto d = param_koopman(map, o.max_space);
  const auto cert = is_permutation(d.koop);
  Printer pr{out, o.format == "json", {}};
  pr.doc = base_json(o, input, d.koop, cert);

  std::optional<InverseResult<RationalFunc>> inverse;
  const auto cls = classify_parameters(d, o.max_space);
  int code = kExitOk;

  auto classification_json = [&]() {
    return json{{"invertible", cls.values_with(Verdict::Invertible)},
                {"singular", cls.values_with(Verdict::Singular)},
                {"undefined", cls.values_with(Verdict::Undefined)},
                {"generic_mismatches", cls.generic_mismatches}};
  };
  auto factors_json = [&]() {
    return json{{"numerator", factorization_json(cls.num_factors)},
                {"denominator", factorization_json(cls.den_factors)}};
  };

  if (kind == "param-invert" || kind == "invert") {
    if (cert.det.is_zero()) {
      pr.emit_text("generically singular (det M = 0 in F_p(a))");
      code = kExitNotPermutation;
    } else {
      inverse = param_invert(d);
      pr.doc["factors"] = factors_json();
      if (o.at) {
        const Fp a0 = field.elem(*o.at);
        if (cls.verdicts[a0.value()] == Verdict::Undefined) throw UndefinedAtError(a0.value());
        if (cls.verdicts[a0.value()] == Verdict::Singular) {
          pr.emit_text("not a permutation at " + symbol + " = " +
                       std::to_string(a0.value()) + " (det M = 0)");
          code = kExitNotPermutation;
        } else {
          const PolyMap<Fp> g = specialize(inverse->inverse, a0);
          pr.doc["inverse"] = render_map(g);
          pr.doc["at"] = a0.value();
          pr.emit_text(render_map(g));
        }
      } else {
        pr.doc["inverse"] = render_map(inverse->inverse);
        pr.emit_text(render_map(inverse->inverse));
      }
    }
  } else if (kind == "koopman") {
    pr.emit_text("field: " + std::to_string(o.field));
    pr.emit_text("nvars: " + std::to_string(map.nvars()));
    pr.emit_text("input: " + input);
    pr.emit_text("dimension: " + std::to_string(d.dimension()));
    pr.emit_text("M:");
    for (std::size_t i = 0; i < d.koop.M.rows(); ++i) {
      std::string row = "  [";
      for (std::size_t j = 0; j < d.koop.M.cols(); ++j) {
        if (j) row += ", ";
        row += render_ratfunc(display_reduced(d.koop.M.at(i, j)), symbol);
      }
      pr.emit_text(row + "]");
    }
    pr.emit_text("det: " + render_ratfunc(display_reduced(cert.det), symbol));
    pr.emit_text(std::string("invertible: ") + (cert.invertible ? "true (generically)" : "false"));
  } else if (kind == "classify") {
    pr.doc["classification"] = classification_json();
    pr.doc["factors"] = factors_json();
    pr.emit_text("field: " + std::to_string(o.field));
    pr.emit_text("generic dimension: " + std::to_string(d.dimension()));
    pr.emit_text("invertible: " + render_set(cls.values_with(Verdict::Invertible)));
    pr.emit_text("singular: " + render_set(cls.values_with(Verdict::Singular)));
    pr.emit_text("undefined: " + render_set(cls.values_with(Verdict::Undefined)));
    pr.emit_text("det numerator: " + render_factorization(cls.num_factors, symbol));
    pr.emit_text("det denominator: " + render_factorization(cls.den_factors, symbol));
    if (!cls.generic_mismatches.empty()) {
      pr.emit_text("generic mismatches: " + render_set(cls.generic_mismatches));
    }
  } else if (kind == "verify") {
    if (!cert.det.is_zero()) inverse = param_invert(d);
    const bool ok =
        oracle_check_param(d, cls, inverse ? &*inverse : nullptr, o.max_space, err);
    pr.doc["verified"] = ok;
    pr.emit_text(ok ? "verify: OK (parametric)" : "verify: MISMATCH");
    pr.finish();
    return ok ? kExitOk : kExitVerifyMismatch;
  }

  if (o.verify && code == kExitOk) {
    if (!oracle_check_param(d, cls, inverse ? &*inverse : nullptr, o.max_space, err)) {
      pr.finish();
      return kExitVerifyMismatch;
    }
  }
  pr.finish();
  return code;
}

}  // namespace detail

/// Entry point shared by the binary and the tests: args exclude the program
/// name. Returns the process exit code.
inline int run(std::vector<std::string> args, std::istream& in = std::cin,
               std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"permutation polynomial analysis over prime fields"};
  app.require_subcommand(1);

  detail::CommonOpts opts;
  struct Sub {
    const char* name;
    const char* help;
    bool with_map;
    bool with_param;
  };
  const std::vector<Sub> subs = {
      {"invert", "inverse of a univariate permutation polynomial", false, true},
      {"invert-map", "inverse of an n-variate polynomial map", true, false},
      {"koopman", "the reduced dual-operator decomposition", true, true},
      {"power", "the k-th compositional power of a map", true, false},
      {"param-invert", "symbolic inverse over F_p(a)", false, true},
      {"classify", "per-parameter-value invertibility classification", false, true},
      {"verify", "cross-check the pipeline against the brute-force oracle", true, true},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    detail::add_common(sub, opts, s.with_map, s.with_param);
    if (std::string(s.name) == "power") {
      sub->add_option("--power", opts.power, "composition exponent k (negative inverts)")
          ->required();
    }
    if (s.with_param) {
      sub->callback([&opts, sub] { opts.parametric = sub->count("--param") > 0; });
    }
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  const std::string kind = app.get_subcommands().at(0)->get_name();
  const bool parametric = opts.parametric || kind == "param-invert" || kind == "classify";
  try {
    if (opts.poly.empty() && opts.map.empty()) {
      err << "one of --poly or --map is required\n";
      return kExitUsage;
    }
    if (parametric) return detail::run_parametric(kind, opts, in, out, err);
    return detail::run_plain(kind, opts, in, out, err);
  } catch (const NotPermutationError& e) {
    out << e.what() << "\n";
    return kExitNotPermutation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace koopinv::cli
