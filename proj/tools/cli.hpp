#pragma once

// Command-line front end. run() takes its arguments, streams and environment
// explicitly so the whole surface can be driven in-process by tests.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corrwit/corrwit.hpp"

namespace corrwit::cli {

enum class Format { Text, Json };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;
}  // namespace exit_code

/// Resolved settings. Precedence: flags > CORRWIT_* environment > config file > defaults.
struct Config {
  std::optional<Int> default_ambient_override;
  std::optional<Int> search_bound;
  std::uint64_t enumeration_cap = SearchBudget{}.node_cap;
  std::optional<Format> output_format;
  std::size_t shard_count = 1;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

namespace detail {

inline Int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::MalformedInput, what + ": not an integer: '" + s + "'");
  }
}

inline Int parse_positive(const std::string& s, const std::string& what) {
  const Int v = parse_int(s, what);
  if (v < 1) throw Error(ErrorCode::MalformedInput, what + " must be positive");
  return v;
}

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  throw Error(ErrorCode::MalformedInput, "format must be text or json, got '" + s + "'");
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline void apply_setting(Config& cfg, const std::string& key, const std::string& value, const std::string& origin) {
  if (key == "bound") {
    cfg.search_bound = parse_int(value, origin + " bound");
  } else if (key == "cap") {
    cfg.enumeration_cap = static_cast<std::uint64_t>(parse_positive(value, origin + " cap"));
  } else if (key == "shards") {
    cfg.shard_count = static_cast<std::size_t>(parse_positive(value, origin + " shards"));
  } else if (key == "format") {
    cfg.output_format = parse_format(value);
  } else if (key == "n") {
    cfg.default_ambient_override = parse_int(value, origin + " n");
  } else {
    throw Error(ErrorCode::MalformedInput, origin + ": unknown key '" + key + "'");
  }
}

}  // namespace detail

/// key = value lines; '#' starts a comment.
inline void load_config_file(Config& cfg, std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::MalformedInput, name + ":" + std::to_string(lineno) + ": expected key = value");
    }
    detail::apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)),
                          name + ":" + std::to_string(lineno));
  }
}

inline void load_environment(Config& cfg, const EnvLookup& env) {
  if (auto v = env("CORRWIT_BOUND")) detail::apply_setting(cfg, "bound", *v, "CORRWIT_BOUND");
  if (auto v = env("CORRWIT_CAP")) detail::apply_setting(cfg, "cap", *v, "CORRWIT_CAP");
}

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline std::string decision_text(const Decision& d) {
  std::string s = std::string(to_string(d.verdict)) + " (" + std::string(to_string(d.reason)) + ")";
  if (d.verdict == Verdict::MultipleRepresentable || d.verdict == Verdict::MultipleNotRepresentable) {
    s += "\nnote: this verdict concerns some positive multiple of the class, not the class itself";
  }
  if (d.conjectural()) s += "\nnote: conjectural criterion; only the necessity of the conditions is proven";
  return s;
}

inline int emit_decision(const Decision& d, Format fmt, Streams io) {
  if (fmt == Format::Json) {
    io.out << json::to_json(d).dump() << "\n";
  } else {
    io.out << decision_text(d) << "\n";
  }
  return d.affirmative() ? exit_code::kOk : exit_code::kNegative;
}

inline void emit_failure(Format fmt, Streams io, std::string_view reason, const std::string& detail) {
  if (fmt == Format::Json) {
    io.out << json::Json{{"ok", false}, {"reason", std::string(reason)}, {"detail", detail}}.dump() << "\n";
  } else {
    io.err << "error: " << reason << ": " << detail << "\n";
  }
}

inline LatticeSpec parse_lattice(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::MalformedInput, "lattice must look like nat:7 or int:4");
  const std::string kind = s.substr(0, colon);
  LatticeSpec spec;
  if (kind == "nat") {
    spec.kind = LatticeKind::Nonnegative;
  } else if (kind == "int") {
    spec.kind = LatticeKind::AllIntegers;
  } else {
    throw Error(ErrorCode::MalformedInput, "lattice kind must be nat or int, got '" + kind + "'");
  }
  spec.width = static_cast<std::size_t>(parse_positive(s.substr(colon + 1), "lattice width"));
  return spec;
}

inline FormKind parse_form(const std::string& s) {
  if (s == "lorentz" || s == "lorentzian") return FormKind::Lorentzian;
  if (s == "euclid" || s == "euclidean") return FormKind::Euclidean;
  throw Error(ErrorCode::MalformedInput, "form must be lorentz or euclid, got '" + s + "'");
}

inline std::string join(const std::vector<Int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

inline int cmd_decide(const std::string& space, const std::vector<std::string>& raw, std::optional<std::vector<Int>> ambient,
                      std::optional<Int> k, Format fmt, Streams io) {
  std::vector<Int> v;
  for (const auto& s : raw) v.push_back(detail::parse_int(s, "coefficient"));
  auto arity = [&](std::size_t n) {
    if (v.size() != n) {
      throw Error(ErrorCode::MalformedInput, space + " takes " + std::to_string(n) + " coefficients, got " +
                                                 std::to_string(v.size()));
    }
  };
  if (space == "p2xp2") {
    arity(3);
    return detail::emit_decision(decide_p2p2({v[0], v[1], v[2]}), fmt, io);
  }
  if (space == "p2xp1") {
    arity(2);
    return detail::emit_decision(decide_p2p1(v[0], v[1]), fmt, io);
  }
  if (space == "p1xp1") {
    arity(2);
    return detail::emit_decision(decide_p1p1(v[0], v[1]), fmt, io);
  }
  if (space == "p3xp3") {
    arity(4);
    return detail::emit_decision(check_spatial({v[0], v[1], v[2], v[3]}), fmt, io);
  }
  if (space == "multi") {
    if (!ambient || ambient->size() != 2 || !k) {
      throw Error(ErrorCode::MalformedInput, "multi needs --ambient N M and --k K");
    }
    MultiDegreeSequence s{(*ambient)[0], (*ambient)[1], *k, v};
    try {
      s.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedInput, e.what());
    }
    return detail::emit_decision(decide_multiple(s), fmt, io);
  }
  throw Error(ErrorCode::MalformedInput, "unknown space '" + space + "' (p2xp2, p2xp1, p1xp1, p3xp3, multi)");
}

inline int cmd_witness(Int a, Int b, Int c, std::optional<Int> n, Format fmt, Streams io) {
  const Triple t{a, b, c};
  const Decision d = decide_p2p2({a, b, c});
  if (!d.affirmative()) {
    detail::emit_failure(fmt, io, to_string(d.reason),
                         t.to_string() + " is " + std::string(to_string(d.verdict)) + "; see `decide p2xp2`");
    return exit_code::kNegative;
  }
  if (!t.positive()) {
    detail::emit_failure(fmt, io, "DegenerateTarget",
                         t.to_string() + " is representable but has a zero entry, so it is realized without a "
                                         "lattice pair; see `decide p2xp2`");
    return exit_code::kNegative;
  }
  WitnessCertificate cert = represent_general(t, n);
  replay(cert);  // self-check; throws ReplayMismatch on a bad certificate
  if (fmt == Format::Json) {
    io.out << json::to_json(cert).dump() << "\n";
  } else {
    io.out << "target " << t.to_string() << " in ambient n = " << cert.ambient_n() << ", moves:";
    for (Move m : cert.moves()) io.out << " " << to_string(m);
    if (cert.moves().empty()) io.out << " none";
    io.out << "\n" << linear_system_description(cert).render_text();
  }
  return exit_code::kOk;
}

inline int cmd_verify(const std::string& path, Format fmt, Streams io) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(io.in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::MalformedInput, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  try {
    const WitnessCertificate cert = json::parse_certificate(text);
    const WitnessPair w = replay(cert);
    if (fmt == Format::Json) {
      io.out << json::Json{{"ok", true}, {"target", json::to_json(cert.target())}, {"x", json::to_json(w.x)},
                           {"y", json::to_json(w.y)}}
                    .dump()
             << "\n";
    } else {
      io.out << "OK: " << w.x.to_string() << ", " << w.y.to_string() << " realize " << cert.target().to_string()
             << "\n";
    }
    return exit_code::kOk;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedInput) throw;
    detail::emit_failure(fmt, io, to_string(e.code()), e.what());
    return exit_code::kNegative;
  }
}

struct SearchArgs {
  std::string lattice;
  std::string form = "lorentz";
  std::optional<Int> max_b;
  std::vector<Int> triple;
  std::optional<Int> norm_cap;
};

inline int cmd_search(const SearchArgs& args, const Config& cfg, Format fmt, Streams io) {
  LatticeSpec spec = detail::parse_lattice(args.lattice);
  const FormKind form = detail::parse_form(args.form);
  const SearchBudget budget{cfg.enumeration_cap};

  if (!args.triple.empty()) {
    if (args.triple.size() != 3) throw Error(ErrorCode::MalformedInput, "--triple takes a b c");
    const Triple t{args.triple[0], args.triple[1], args.triple[2]};
    spec.coordinate_bound = cfg.search_bound.value_or(
        form == FormKind::Lorentzian ? default_lorentzian_bound(t.b) : isqrt(std::max<Int>({t.a, t.c, 0})));
    const auto w = brute_search(spec, form, t, budget);
    const bool conclusive = w.has_value() || (form == FormKind::Euclidean && euclidean_conclusive(spec, t));
    if (fmt == Format::Json) {
      json::Json j{{"lattice", spec.name()}, {"form", std::string(to_string(form))},
                   {"bound", spec.coordinate_bound}, {"target", json::to_json(t)},
                   {"witnessed", w.has_value()}, {"conclusive", conclusive}};
      if (w) {
        j["x"] = json::to_json(w->x);
        j["y"] = json::to_json(w->y);
      }
      io.out << j.dump() << "\n";
    } else if (w) {
      io.out << "witness: " << w->x.to_string() << ", " << w->y.to_string() << "\n";
    } else {
      io.out << "none within bound " << spec.coordinate_bound
             << (conclusive ? " (conclusive: no witness exists)" : " (bound-relative)") << "\n";
    }
    return w ? exit_code::kOk : exit_code::kNegative;
  }

  if (!args.max_b) throw Error(ErrorCode::MalformedInput, "search needs --max-b or --triple");
  Int bound = 0;
  if (cfg.search_bound) {
    bound = *cfg.search_bound;
  } else if (form == FormKind::Lorentzian) {
    bound = default_lorentzian_bound(*args.max_b);
  } else {
    throw Error(ErrorCode::MalformedInput, "euclidean scans need an explicit --bound");
  }
  ScanOptions options{cfg.shard_count, budget, args.norm_cap};
  const ScanReport report = completeness_scan(spec, form, *args.max_b, bound, options);
  if (fmt == Format::Json) {
    io.out << json::scan_report_lines(report);
  } else {
    io.out << "lattice " << spec.name() << ", form " << to_string(form) << ", max_b " << report.max_b << ", bound "
           << bound;
    if (form == FormKind::Euclidean) io.out << ", a,c <= " << report.norm_cap;
    io.out << ": " << report.entries.size() << " triples, " << report.witnessed() << " witnessed, "
           << report.unwitnessed() << " unwitnessed\n";
    for (const auto& e : report.entries) {
      if (!e.witness) {
        io.out << "unwitnessed " << e.target.to_string() << (e.conclusive ? " (conclusive)" : " (bound-relative)")
               << "\n";
      }
    }
  }
  return report.unwitnessed() == 0 ? exit_code::kOk : exit_code::kNegative;
}

inline int cmd_foursquares(Int n, Format fmt, Streams io) {
  if (n < 0) throw Error(ErrorCode::MalformedInput, "n must be nonnegative");
  const auto fs = four_squares(n);
  const std::vector<Int> parts(fs.parts.begin(), fs.parts.end());
  if (fmt == Format::Json) {
    io.out << json::Json{{"n", n}, {"parts", parts}}.dump() << "\n";
  } else {
    io.out << detail::join(parts) << "\n";
  }
  return exit_code::kOk;
}

inline int cmd_decompositions(Int n, Int k, Format fmt, Streams io) {
  if (n < 0 || k < 1) throw Error(ErrorCode::MalformedInput, "need n >= 0 and k >= 1");
  const auto reps = sum_of_squares_representations(n, static_cast<std::size_t>(k));
  if (fmt == Format::Json) {
    io.out << json::Json{{"n", n}, {"k", k}, {"representations", reps}, {"count", reps.size()}}.dump() << "\n";
  } else {
    for (const auto& r : reps) io.out << detail::join(r) << "\n";
    io.out << "count " << reps.size() << "\n";
  }
  return exit_code::kOk;
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

inline int run(std::vector<std::string> args, Streams io, const EnvLookup& env = process_env) {
  CLI::App app{"Representability decisions and witness certificates for classes in products of projective spaces",
               "corrwit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_flag, config_path;
  std::optional<Int> bound_flag, n_flag;
  std::optional<std::uint64_t> cap_flag;
  std::optional<std::size_t> shards_flag;
  app.add_option("--format", format_flag, "text or json");
  app.add_option("--config", config_path, "key = value settings file");
  app.add_option("--bound", bound_flag, "coordinate bound for searches");
  app.add_option("--cap", cap_flag, "node budget per search");
  app.add_option("--shards", shards_flag, "concurrent shards for scans");
  app.add_option("--n", n_flag, "ambient n for witnesses");

  auto* decide = app.add_subcommand("decide", "decide representability of a class");
  std::string space;
  std::vector<std::string> coeffs;
  std::optional<std::vector<Int>> ambient;
  std::optional<Int> k;
  decide->add_option("space", space, "p2xp2 | p2xp1 | p1xp1 | p3xp3 | multi")->required();
  decide->add_option("coefficients", coeffs, "class coefficients")->allow_extra_args();
  decide->add_option("--ambient", ambient, "n m for multi")->expected(2);
  decide->add_option("--k", k, "homology degree for multi");

  auto* witness = app.add_subcommand("witness", "emit a witness certificate for a positive class in P2 x P2");
  std::vector<Int> abc;
  witness->add_option("abc", abc, "a b c")->expected(3)->required();

  auto* verify = app.add_subcommand("verify", "check a JSON certificate (file or stdin)");
  std::string path;
  verify->add_option("path", path, "certificate file; '-' or absent reads stdin");

  auto* search = app.add_subcommand("search", "bounded brute-force witness search or completeness scan");
  SearchArgs sargs;
  search->add_option("--lattice", sargs.lattice, "nat:W or int:W")->required();
  search->add_option("--form", sargs.form, "lorentz or euclid");
  search->add_option("--max-b", sargs.max_b, "scan all triples with b <= max-b");
  search->add_option("--triple", sargs.triple, "search one triple a b c")->expected(3);
  search->add_option("--norm-cap", sargs.norm_cap, "euclidean scans: cap on a and c");

  auto* foursq = app.add_subcommand("foursquares", "canonical four-square decomposition");
  Int fs_n = 0;
  foursq->add_option("n", fs_n)->required();

  auto* decomp = app.add_subcommand("decompositions", "all representations of n as a sum of k squares");
  Int dn = 0, dk = 0;
  decomp->add_option("n", dn)->required();
  decomp->add_option("k", dk)->required();

  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    io.out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    io.err << "usage error: " << e.what() << "\n" << app.help();
    return exit_code::kUsage;
  }

  Config cfg;
  Format fmt = Format::Text;
  try {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw Error(ErrorCode::MalformedInput, "cannot open config " + config_path);
      load_config_file(cfg, f, config_path);
    }
    load_environment(cfg, env);
    if (!format_flag.empty()) cfg.output_format = detail::parse_format(format_flag);
    if (bound_flag) cfg.search_bound = *bound_flag;
    if (cap_flag) cfg.enumeration_cap = *cap_flag;
    if (shards_flag) cfg.shard_count = *shards_flag;
    if (n_flag) cfg.default_ambient_override = *n_flag;
    if (cfg.shard_count < 1 || cfg.enumeration_cap < 1) throw Error(ErrorCode::MalformedInput, "caps must be positive");

    // Certificates are machine artifacts, so witness defaults to JSON.
    fmt = cfg.output_format.value_or(witness->parsed() ? Format::Json : Format::Text);

    if (decide->parsed()) return cmd_decide(space, coeffs, ambient, k, fmt, io);
    if (witness->parsed()) return cmd_witness(abc[0], abc[1], abc[2], cfg.default_ambient_override, fmt, io);
    if (verify->parsed()) return cmd_verify(path, fmt, io);
    if (search->parsed()) return cmd_search(sargs, cfg, fmt, io);
    if (foursq->parsed()) return cmd_foursquares(fs_n, fmt, io);
    if (decomp->parsed()) return cmd_decompositions(dn, dk, fmt, io);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::MalformedInput:
        io.err << "usage error: " << e.what() << "\n";
        return exit_code::kUsage;
      case ErrorCode::BoundTooLargeForBudget:
        io.err << "error: " << e.what() << "\n";
        return exit_code::kBudget;
      default:
        detail::emit_failure(fmt, io, to_string(e.code()), e.what());
        return exit_code::kNegative;
    }
  }
  return exit_code::kUsage;
}

}  // namespace corrwit::cli
