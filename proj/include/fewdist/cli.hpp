#pragma once

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fewdist/catalog.hpp"
#include "fewdist/io.hpp"
#include "fewdist/report.hpp"
#include "fewdist/selftest.hpp"

namespace fewdist {
namespace cli {

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + out_path + "'");
  file << text;
}

inline bool parse_catalog_name(const std::string& name, const std::string& prefix,
                               int& param) {
  if (name.size() <= prefix.size() + 1 || name.compare(0, prefix.size(), prefix) != 0 ||
      name[prefix.size()] != '-')
    return false;
  try {
    std::size_t pos = 0;
    std::string tail = name.substr(prefix.size() + 1);
    param = std::stoi(tail, &pos);
    return pos == tail.size();
  } catch (const std::exception&) {
    return false;
  }
}

inline std::string summarize_analysis(const Json& report) {
  std::ostringstream out;
  out << "points:          " << report["n"] << " in S^" << (report["m"].get<int>() - 1)
      << " over " << report["field"].get<std::string>() << "\n";
  out << "distance values: ";
  for (const auto& v : report["distance_values"]) out << v.get<std::string>() << " ";
  out << "(s = " << report["distance_values"].size() << ")\n";
  out << "strength:        " << report["strength"] << "\n";
  out << "antipodal:       "
      << (report["flags"]["antipodal"].get<bool>() ? "yes" : "no") << "\n";
  out << "bounds:\n";
  for (const auto& b : report["bounds"]) {
    out << "  " << b["name"].get<std::string>() << " [" << b["hypothesis"].get<std::string>()
        << "]: ";
    if (!b["applicable"].get<bool>()) {
      out << "not applicable\n";
      continue;
    }
    out << b["value"];
    if (b.contains("attained") && b["attained"].get<bool>()) out << "  (attained)";
    out << "\n";
  }
  if (report.contains("scheme")) {
    const Json& s = report["scheme"];
    out << "scheme:          class " << s["s"] << ", multiplicities ";
    for (const auto& m : s["multiplicities"]) out << m << " ";
    out << "\n";
    if (s["q_polynomial"].get<bool>()) {
      out << "Q-polynomial:    yes, l = " << s["l"] << ", S0 case " << s["s0_case"]
          << ", bound " << s["s0_bound"]
          << (s["s0_attained"].get<bool>() ? " (attained)" : "") << "\n";
    } else {
      out << "Q-polynomial:    no ordering\n";
    }
  } else if (report.contains("scheme_failure")) {
    out << "scheme:          distance classes do not close (axiom "
        << report["scheme_failure"]["axiom"] << ")\n";
  }
  return out.str();
}

}  // namespace detail

/// Runs the command-line interface. Exit codes: 0 success, 1 malformed or
/// inapplicable input, 2 violated mathematical invariant.
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"exact certificates for spherical few-distance sets, designs, and "
               "Q-polynomial association schemes"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  unsigned threads = 0;
  bool allow_large = false;
  app.add_option("--threads", threads, "worker threads (default: all cores)");
  app.add_flag("--allow-large-exact", allow_large,
               "lift the exact-rank size cap (default 512, env FEWDIST_RANK_CAP)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "audit a points file");
  std::string analyze_input, analyze_output;
  int analyze_max_degree = 0;
  bool analyze_json = false, analyze_no_scheme = false;
  analyze->add_option("points-file", analyze_input)->required();
  analyze->add_option("--max-degree", analyze_max_degree, "strength search ceiling");
  analyze->add_flag("--json", analyze_json, "emit the JSON certificate");
  analyze->add_flag("--no-scheme", analyze_no_scheme, "skip the scheme analysis");
  analyze->add_option("-o,--output", analyze_output, "write to a file instead of stdout");

  // scheme
  auto* scheme_cmd = app.add_subcommand("scheme", "audit a relations file");
  std::string scheme_input, scheme_output;
  bool scheme_json = false;
  scheme_cmd->add_option("relations-file", scheme_input)->required();
  scheme_cmd->add_flag("--json", scheme_json, "emit the JSON certificate");
  scheme_cmd->add_option("-o,--output", scheme_output, "write to a file instead of stdout");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the closed-form bounds");
  int opt_m = 0, opt_s = 0, opt_i = -1, opt_t = -1, opt_l = -1, opt_table_degree = 8;
  bool opt_antipodal = false, opt_table = false, bounds_json = false;
  bounds_cmd->add_option("--m", opt_m, "ambient dimension");
  bounds_cmd->add_option("--s", opt_s, "number of distances / classes");
  bounds_cmd->add_option("--i", opt_i, "strength offset parameter");
  bounds_cmd->add_option("--strength", opt_t, "design strength t (sets i)");
  bounds_cmd->add_option("--l", opt_l, "Q-polynomial index l for the S0 bound");
  bounds_cmd->add_flag("--antipodal", opt_antipodal, "use the antipodal corollary");
  bounds_cmd->add_flag("--table", opt_table, "print the h_{i,m} table");
  bounds_cmd->add_option("--max-degree", opt_table_degree, "table degree limit");
  bounds_cmd->add_flag("--json", bounds_json, "emit JSON");

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "emit a named witness object");
  std::string catalog_name, catalog_output;
  std::size_t uv_index = 0;
  catalog_cmd->add_option("name", catalog_name)->required();
  catalog_cmd->add_option("-o,--output", catalog_output, "output file (default stdout)");
  catalog_cmd->add_option("--uv-index", uv_index,
                          "which admissible (u,v) pair the Leech section uses");

  // selftest
  auto* selftest_cmd = app.add_subcommand("selftest", "run the invariant suites");
  bool skip_leech = false;
  selftest_cmd->add_flag("--skip-leech", skip_leech,
                         "skip the 2025-point set in the suites");

  std::vector<const char*> argv;
  argv.push_back("fewdist");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream capture;
    int code = app.exit(e, capture, capture);
    (code == 0 ? out : err) << capture.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (threads > 0) worker_count().store(threads);
    if (allow_large) exact_rank_cap().store(std::numeric_limits<std::size_t>::max());

    if (*analyze) {
      std::string content = detail::slurp(analyze_input);
      std::istringstream in(content);
      ConfigVariant cfg = read_points(in);
      AnalyzeOptions options;
      options.max_degree = analyze_max_degree;
      options.with_scheme = !analyze_no_scheme;
      Json report = analyze_report(cfg, options, to_hex(fnv1a64(content)));
      detail::emit(analyze_json ? report.dump(2) + "\n" : detail::summarize_analysis(report),
                   analyze_output, out);
      return 0;
    }

    if (*scheme_cmd) {
      std::string content = detail::slurp(scheme_input);
      std::istringstream in(content);
      AssociationScheme scheme = verify_scheme(read_relations(in));
      Json report = scheme_report(scheme);
      report["input_digest"] = to_hex(fnv1a64(content));
      report["toolchain"] = kVersion;
      if (scheme_json) {
        detail::emit(report.dump(2) + "\n", scheme_output, out);
      } else {
        std::ostringstream text;
        text << "scheme: n = " << report["n"] << ", s = " << report["s"]
             << ", multiplicities ";
        for (const auto& m : report["multiplicities"]) text << m << " ";
        text << "\n";
        if (report["q_polynomial"].get<bool>()) {
          text << "Q-polynomial, l = " << report["l"] << ", S0 case "
               << report["s0_case"] << ", bound " << report["s0_bound"]
               << (report["s0_attained"].get<bool>() ? " (attained)\n" : "\n");
        } else {
          text << "not Q-polynomial\n";
        }
        detail::emit(text.str(), scheme_output, out);
      }
      return 0;
    }

    if (*bounds_cmd) {
      Json reports = Json::array();
      std::ostringstream text;
      if (opt_table) {
        if (opt_m < 2) opt_m = 10;
        text << "h_{i,m} for m = 2.." << opt_m << ", i = 0.." << opt_table_degree << "\n";
        Json table = Json::array();
        std::size_t width = harm_dim(opt_m, opt_table_degree).str().size() + 1;
        for (int m = 2; m <= opt_m; ++m) {
          text << "m=" << std::setw(2) << m << ":";
          Json row = Json::array();
          for (int i = 0; i <= opt_table_degree; ++i) {
            BigInt h = harm_dim(m, i);
            text << std::setw(static_cast<int>(width)) << h.str();
            row.push_back(fewdist::detail::big_to_json(h));
          }
          text << "\n";
          table.push_back(row);
        }
        Json entry;
        entry["name"] = "harmonic_dimension_table";
        entry["table"] = table;
        reports.push_back(entry);
      }
      if (opt_m >= 2 && opt_s >= 1 && !opt_table) {
        int i = opt_i;
        if (opt_t >= 0) i = 2 * opt_s - opt_t;
        auto add = [&](const std::string& name, const BigInt& value,
                       const std::string& hypothesis) {
          Json entry;
          entry["name"] = name;
          entry["hypothesis"] = hypothesis;
          entry["value"] = fewdist::detail::big_to_json(value);
          reports.push_back(entry);
          text << name << " [" << hypothesis << "] = " << value.str() << "\n";
        };
        add("absolute_s_distance", absolute_bound_sdist(opt_m, opt_s),
            "m=" + std::to_string(opt_m) + " s=" + std::to_string(opt_s));
        if (i >= 0) {
          std::string hyp = "m=" + std::to_string(opt_m) + " s=" + std::to_string(opt_s) +
                            " i=" + std::to_string(i);
          if (opt_antipodal) {
            add("antipodal", antipodal_bound(opt_m, opt_s, i), hyp);
          } else {
            if (i >= 2 && i <= opt_s + 1)
              add("corollary_strength", corollary_bound(opt_m, opt_s, i), hyp);
            if (i >= 2 && i <= 2 * opt_s)
              add("main_theorem_no_flags", main_bound(opt_m, opt_s, i, {}), hyp);
          }
        }
        if (opt_l >= 0) {
          S0Bound s0 = s0_bound(opt_m, opt_s, opt_l);
          add("s0_case_" + std::to_string(s0.case_tag), s0.value,
              "m1=" + std::to_string(opt_m) + " s=" + std::to_string(opt_s) +
                  " l=" + std::to_string(opt_l));
        }
      }
      if (reports.empty())
        throw RangeError("bounds needs --table or at least --m and --s");
      out << (bounds_json ? reports.dump(2) + "\n" : text.str());
      return 0;
    }

    if (*catalog_cmd) {
      std::ostringstream text;
      int param = 0;
      if (catalog_name == "dodecahedron") {
        write_points_gram(text, catalog::dodecahedron());
      } else if (catalog_name == "leech-derived-2025") {
        err << "minimal vectors: " << catalog::leech_minimal_vectors().vectors.size()
            << "\n";
        write_points_gram(text, catalog::leech_derived_2025(uv_index));
      } else if (catalog_name == "leech-derived-2025-relations") {
        SphericalConfig<Rational> cfg = catalog::leech_derived_2025(uv_index);
        DistanceDistribution<Rational> dist = inner_product_set(cfg);
        write_relations(text, distance_classes(cfg, dist));
      } else if (detail::parse_catalog_name(catalog_name, "simplex", param)) {
        write_points_gram(text, catalog::simplex(param));
      } else if (detail::parse_catalog_name(catalog_name, "cross-polytope", param)) {
        write_points_gram(text, catalog::cross_polytope(param));
      } else if (detail::parse_catalog_name(catalog_name, "triangular", param)) {
        write_relations(text, catalog::triangular(param).relation);
      } else if (detail::parse_catalog_name(catalog_name, "cycle", param)) {
        write_relations(text, catalog::cycle(param).relation);
      } else {
        throw RangeError(
            "unknown catalog name '" + catalog_name +
            "' (try simplex-M, cross-polytope-M, triangular-K, cycle-K, "
            "dodecahedron, leech-derived-2025, leech-derived-2025-relations)");
      }
      detail::emit(text.str(), catalog_output, out);
      return 0;
    }

    if (*selftest_cmd) {
      bool all_pass = true;
      for (const SelftestResult& r : run_selftest(!skip_leech)) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) out << " - " << r.detail;
        out << "\n";
        all_pass = all_pass && r.pass;
      }
      return all_pass ? 0 : 2;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind == ErrorKind::invariant ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cli
}  // namespace fewdist
