// knotfilt command-line front end. Talks to the library only through the C
// interface in knotfilt/knotfilt.h.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "knotfilt/knotfilt.h"

namespace {

using nlohmann::json;

struct Globals {
  bool json_output = false;
  int max_grid_size = 9;
  int threads = 0;
};

struct GridHandle {
  kf_grid* p = nullptr;
  ~GridHandle() { kf_grid_free(p); }
};

struct ComplexHandle {
  kf_complex* p = nullptr;
  ~ComplexHandle() { kf_complex_free(p); }
};

struct Outcome {
  kf_status status = KF_OK;
  std::string report;  // empty when the library produced none
};

Outcome collect(kf_status status, char* out) {
  Outcome o{status, {}};
  if (out != nullptr) {
    o.report = out;
    kf_string_free(out);
  }
  return o;
}

std::string text_of(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void print_human(const std::string& command, const json& doc) {
  const json& r = doc["results"];
  auto line = [](const std::string& key, const json& value) {
    std::cout << "  " << key << ": " << text_of(value) << "\n";
  };
  std::cout << command << " [" << doc["status"].get<std::string>() << "]\n";
  if (command == "hfk") {
    std::cout << "  knot Floer ranks (alexander, maslov): rank\n";
    for (const auto& row : r["table"]) {
      std::cout << "    (" << row["alexander"] << ", " << row["maslov"] << "): " << row["rank"] << "\n";
    }
    line("Alexander polynomial", r["alexander_polynomial"]["text"]);
    line("genus upper support", r["genus_upper_support"]);
    line("symmetric", r["symmetric"]);
  } else if (command == "tau") {
    line("tau", r["tau"]);
    line("class", r["class"]);
    line("class maslov grading", r["maslov"]);
    std::cout << "  witness: level " << r["witness"]["level"] << ", " << r["witness"]["size"] << " generator(s)\n";
    if (r.contains("genus_upper_support")) {
      line("genus upper support", r["genus_upper_support"]);
      line("|tau| <= genus support", r["adjunction_bound_holds"]);
    }
  } else if (command == "surgery-check") {
    line("tau", r["tau"]);
    for (const auto& row : r["rows"]) {
      std::cout << "    m=" << row["m"] << "  " << text_of(row["verdict"])
                << "  computed " << (row["computed_nonzero"].get<bool>() ? "nonzero" : "zero")
                << (row["contradiction"].get<bool>() ? "  CONTRADICTION" : "") << "\n";
    }
    line("contradictions", r["contradictions"]);
  } else if (command == "validate") {
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (it.key() != "violations") line(it.key(), it.value());
    }
    for (const auto& v : r["violations"]) std::cout << "    violation: " << text_of(v) << "\n";
  } else {
    for (auto it = r.begin(); it != r.end(); ++it) line(it.key(), it.value());
  }
  for (const auto& w : doc["warnings"]) std::cout << "  warning: " << text_of(w) << "\n";
}

int finish(const std::string& command, const json& echo, const Outcome& o, const Globals& g, double seconds) {
  if (o.report.empty()) {
    std::cerr << "error: " << kf_last_error() << "\n";
    return static_cast<int>(o.status);
  }
  json doc = json::parse(o.report);
  doc["command"] = echo;
  if (g.json_output) {
    std::cout << doc.dump(2) << "\n";
  } else {
    print_human(command, doc);
    std::printf("  elapsed: %.3f s\n", seconds);
  }
  if (o.status != KF_OK) std::cerr << "error: " << kf_last_error() << "\n";
  return static_cast<int>(o.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtration invariants of knots from grid diagrams and filtered complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json_output, "Emit the machine-readable report");
  app.add_option("--max-grid-size", g.max_grid_size, "Largest grid size accepted")->check(CLI::Range(2, 12));
  app.add_option("--threads", g.threads, "Worker threads (0 = auto)")->check(CLI::NonNegativeNumber);

  std::string grid_file;
  std::string complex_file;
  std::vector<std::string> complex_files;
  std::string class_name = "top";
  std::optional<int> level;
  int tb = 0;
  int rot = 0;
  int tau = 0;
  std::optional<int> genus;
  long long p = 0;
  std::optional<long long> q;
  std::optional<long long> target_n;
  long long cable_genus = 0;
  std::vector<int> tbs;
  std::vector<int> rots;
  int fibered_genus = 0;

  auto* validate = app.add_subcommand("validate", "Check a grid or complex file");
  auto* vg = validate->add_option("--grid", grid_file, "Grid file")->check(CLI::ExistingFile);
  auto* vc = validate->add_option("--complex", complex_file, "Complex file")->check(CLI::ExistingFile);
  vg->excludes(vc);
  validate->require_option(1);

  auto* hfk = app.add_subcommand("hfk", "Knot Floer ranks, Alexander polynomial, genus support");
  auto* hg = hfk->add_option("--grid", grid_file, "Grid file")->check(CLI::ExistingFile);
  auto* hc = hfk->add_option("--complex", complex_file, "Complex file")->check(CLI::ExistingFile);
  hg->excludes(hc);
  hfk->require_option(1);

  auto* tau_cmd = app.add_subcommand("tau", "tau of the distinguished class");
  auto* tg = tau_cmd->add_option("--grid", grid_file, "Grid file")->check(CLI::ExistingFile);
  auto* tc = tau_cmd->add_option("--complex", complex_file, "Complex file")->check(CLI::ExistingFile);
  tg->excludes(tc);
  tau_cmd->add_option("--class", class_name, "Class selector")->check(CLI::IsMember({"top"}));
  tau_cmd->require_option(1, 2);

  auto* mirror = app.add_subcommand("mirror-check", "tau of a grid and of its mirror");
  mirror->add_option("--grid", grid_file, "Grid file")->required()->check(CLI::ExistingFile);

  auto* sum = app.add_subcommand("connect-sum", "tau additivity under connected sum");
  sum->add_option("--complex", complex_files, "Two complex files")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->check(CLI::ExistingFile);

  auto* surgery = app.add_subcommand("surgery-check", "Large-surgery dichotomy for the top class");
  surgery->add_option("--complex", complex_file, "Complex file")->required()->check(CLI::ExistingFile);
  surgery->add_option("--m", level, "Surgery level (omit to sweep the Alexander window)");
  surgery->add_option("--class", class_name, "Class selector")->check(CLI::IsMember({"top"}));

  auto* bennequin = app.add_subcommand("bennequin", "Check tb + |rot| <= 2 tau - 1");
  bennequin->add_option("--tb", tb, "Thurston-Bennequin number")->required();
  bennequin->add_option("--rot", rot, "Rotation number")->required();
  bennequin->add_option("--tau", tau, "tau")->required();
  bennequin->add_option("--genus", genus, "Seifert genus")->check(CLI::NonNegativeNumber);

  auto* cable = app.add_subcommand("cable", "Cable bound, or least q pushing it below -N");
  cable->add_option("--p", p, "Cable parameter p")->required();
  auto* cq = cable->add_option("--q", q, "Cable parameter q");
  auto* cn = cable->add_option("--target-N", target_n, "Find the least q with bound < -N");
  cq->excludes(cn);
  cable->add_option("--genus", cable_genus, "Genus of the companion")->required();

  auto* fibered = app.add_subcommand("fibered", "Tightness verdict for a fibered knot");
  fibered->add_option("--tb", tbs, "Thurston-Bennequin number (repeat per contact structure)")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  fibered->add_option("--rot", rots, "Rotation number (repeat per contact structure)")
      ->required()
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  fibered->add_option("--genus", fibered_genus, "Genus of the fiber")->required()->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return KF_ERR_INPUT;
  }

  kf_options options;
  kf_options_init(&options);
  options.max_grid_size = g.max_grid_size;
  options.threads = g.threads;

  auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  json echo{{"name", name}};
  char* out = nullptr;

  auto load_grid = [&](GridHandle& h) {
    echo["grid"] = grid_file;
    return kf_grid_load(grid_file.c_str(), &h.p);
  };
  auto load_complex = [&](ComplexHandle& h, const std::string& path) { return kf_complex_load(path.c_str(), &h.p); };
  auto load_error = [&](kf_status s) {
    std::cerr << "error: " << kf_last_error() << "\n";
    return static_cast<int>(s);
  };

  if (name == "validate" || name == "hfk" || name == "tau") {
    if (!grid_file.empty()) {
      GridHandle h;
      if (auto s = load_grid(h); s != KF_OK) return load_error(s);
      kf_status s = KF_OK;
      if (name == "validate") {
        s = kf_validate_grid(h.p, &out);
      } else if (name == "hfk") {
        s = kf_hfk_grid(h.p, &options, &out);
      } else {
        echo["class"] = class_name;
        s = kf_tau_grid(h.p, class_name.c_str(), &options, &out);
      }
      return finish(name, echo, collect(s, out), g, elapsed());
    }
    ComplexHandle h;
    echo["complex"] = complex_file;
    if (auto s = load_complex(h, complex_file); s != KF_OK) return load_error(s);
    kf_status s = KF_OK;
    if (name == "validate") {
      s = kf_validate_complex(h.p, &out);
    } else if (name == "hfk") {
      s = kf_hfk_complex(h.p, &out);
    } else {
      echo["class"] = class_name;
      s = kf_tau_complex(h.p, class_name.c_str(), &out);
    }
    return finish(name, echo, collect(s, out), g, elapsed());
  }

  if (name == "mirror-check") {
    GridHandle h;
    if (auto s = load_grid(h); s != KF_OK) return load_error(s);
    auto s = kf_mirror_check(h.p, &options, &out);
    return finish(name, echo, collect(s, out), g, elapsed());
  }

  if (name == "connect-sum") {
    if (complex_files.size() != 2) {
      std::cerr << "error: connect-sum needs exactly two --complex files\n";
      return KF_ERR_INPUT;
    }
    echo["complex"] = complex_files;
    ComplexHandle a;
    ComplexHandle b;
    if (auto s = load_complex(a, complex_files[0]); s != KF_OK) return load_error(s);
    if (auto s = load_complex(b, complex_files[1]); s != KF_OK) return load_error(s);
    auto s = kf_connect_sum(a.p, b.p, &out);
    return finish(name, echo, collect(s, out), g, elapsed());
  }

  if (name == "surgery-check") {
    echo["complex"] = complex_file;
    echo["class"] = class_name;
    echo["m"] = level ? json(*level) : json(nullptr);
    ComplexHandle h;
    if (auto s = load_complex(h, complex_file); s != KF_OK) return load_error(s);
    auto s = kf_surgery_check(h.p, level ? 1 : 0, level.value_or(0), class_name.c_str(), &out);
    return finish(name, echo, collect(s, out), g, elapsed());
  }

  if (name == "bennequin") {
    echo["tb"] = tb;
    echo["rot"] = rot;
    echo["tau"] = tau;
    echo["genus"] = genus ? json(*genus) : json(nullptr);
    int genus_value = genus.value_or(0);
    auto s = kf_bennequin(tb, rot, tau, genus ? &genus_value : nullptr, &out);
    return finish(name, echo, collect(s, out), g, elapsed());
  }

  if (name == "cable") {
    echo["p"] = p;
    echo["genus"] = cable_genus;
    if (target_n) {
      echo["target_N"] = *target_n;
      auto s = kf_cable_min_q(*target_n, p, cable_genus, &out);
      return finish(name, echo, collect(s, out), g, elapsed());
    }
    if (!q) {
      std::cerr << "error: cable needs --q or --target-N\n";
      return KF_ERR_INPUT;
    }
    echo["q"] = *q;
    auto s = kf_cable_bound(p, *q, cable_genus, &out);
    return finish(name, echo, collect(s, out), g, elapsed());
  }

  if (name == "fibered") {
    if (tbs.size() != rots.size()) {
      std::cerr << "error: fibered needs as many --rot values as --tb values\n";
      return KF_ERR_INPUT;
    }
    echo["tb"] = tbs;
    echo["rot"] = rots;
    echo["genus"] = fibered_genus;
    auto s = kf_fibered(tbs.data(), rots.data(), tbs.size(), fibered_genus, &out);
    return finish(name, echo, collect(s, out), g, elapsed());
  }

  std::cerr << "error: unknown command\n";
  return KF_ERR_INPUT;
}
