// iet: command-line front end. Talks to the library only through iet.h.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "iet/iet.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitStepCap = 3;
constexpr int kExitPrecondition = 4;

int exit_code(iet_status s) {
  switch (s) {
    case IET_OK: return kExitOk;
    case IET_ERR_STEP_CAP: return kExitStepCap;
    case IET_ERR_PRECONDITION: return kExitPrecondition;
    case IET_ERR_INTERNAL: return kExitInternal;
    default: return kExitConfig;
  }
}

struct Failure {
  int code;
  std::string message;
};

void check(iet_status s) {
  if (s != IET_OK) throw Failure{exit_code(s), std::string(iet_status_name(s)) + ": " + iet_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{kExitConfig, message}; }

long to_long(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  usage("--" + name + ": '" + text + "' is not an integer");
}

double to_double(const std::string& name, const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  usage("--" + name + ": '" + text + "' is not a number");
}

// Option values are kept as text; unset options fall back to the config's
// params table and then to the built-in default.
class Params {
 public:
  void add(CLI::App* cmd, const std::string& name, const std::string& help, std::string fallback = "") {
    auto& slot = values_[key(cmd, name)];
    slot.fallback = std::move(fallback);
    slot.option = cmd->add_option("--" + name, slot.text, help);
  }

  void resolve(const iet_config* cfg) {
    for (auto& [k, slot] : values_) {
      if (slot.option->count() > 0) continue;
      const std::string name = k.substr(k.find(':') + 1);
      const char* from_config = iet_config_param(cfg, name.c_str());
      slot.text = from_config != nullptr ? from_config : slot.fallback;
    }
  }

  const std::string& get(CLI::App* cmd, const std::string& name) const {
    return values_.at(key(cmd, name)).text;
  }
  std::string required(CLI::App* cmd, const std::string& name) const {
    const std::string& v = get(cmd, name);
    if (v.empty()) usage(cmd->get_name() + ": --" + name + " is required");
    return v;
  }
  const char* optional(CLI::App* cmd, const std::string& name) const {
    const std::string& v = get(cmd, name);
    return v.empty() ? nullptr : v.c_str();
  }
  long integer(CLI::App* cmd, const std::string& name) const { return to_long(name, required(cmd, name)); }

 private:
  struct Slot {
    std::string text;
    std::string fallback;
    CLI::Option* option = nullptr;
  };
  static std::string key(CLI::App* cmd, const std::string& name) { return cmd->get_name() + ":" + name; }
  std::map<std::string, Slot> values_;
};

struct MapDeleter {
  void operator()(iet_map* f) const { iet_map_destroy(f); }
};
struct ConfigDeleter {
  void operator()(iet_config* c) const { iet_config_destroy(c); }
};

std::string take(char* s) {
  std::string out(s);
  iet_string_free(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with interval exchange transformations", "iet"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string config_path;
  std::string lengths;
  std::string perm;
  std::string format;
  std::string output;
  app.add_option("--config", config_path, "IET config file (JSON or TOML)");
  app.add_option("--lengths", lengths, "comma-separated exact lengths, e.g. 3/5,2/5");
  app.add_option("--perm", perm, "permutation in one-line notation, e.g. \"2 1\"");
  app.add_option("--format", format, "text, json, csv or jsonl");
  app.add_option("--output", output, "write to this file instead of stdout");

  Params p;
  auto* eval = app.add_subcommand("eval", "evaluate f at a point");
  p.add(eval, "x", "point in [0, b)");
  p.add(eval, "inverse", "evaluate the inverse instead (true/false)", "false");

  auto* orbit = app.add_subcommand("orbit", "orbit window f^k(x) for k = -n..n-1");
  p.add(orbit, "x", "base point");
  p.add(orbit, "n", "window size");
  p.add(orbit, "symmetric", "use k = -n..n (true/false)", "false");

  auto* induce = app.add_subcommand("induce", "first-return map on [0, t)");
  p.add(induce, "t", "threshold t in (0, b]");
  p.add(induce, "step-cap", "maximum interval steps", "1000000");
  p.add(induce, "idoc-depth", "aperiodicity probe depth reported alongside (0 skips)", "10000");

  auto* psi = app.add_subcommand("psi", "record series of n * rho'_n(t)");
  p.add(psi, "t", "point t in (0, b)");
  p.add(psi, "N", "horizon");
  p.add(psi, "phi", "use rho_n instead of rho'_n (true/false)", "false");

  auto* scan = app.add_subcommand("scan", "classify a grid of t values");
  p.add(scan, "grid", "lo:hi:count");
  p.add(scan, "N", "horizon");
  p.add(scan, "threshold", "evidence threshold (exact scalar or inf; default b/(24r))");
  p.add(scan, "jobs", "worker threads", "1");

  auto* wm = app.add_subcommand("wm", "Weyl-sum weak mixing diagnostics for f_t");
  p.add(wm, "t", "threshold t");
  p.add(wm, "N", "horizon");
  p.add(wm, "grid-size", "number of alpha grid points", "1024");
  p.add(wm, "x", "base point (default t/2 after a probe)");
  p.add(wm, "peak-threshold", "report peaks at or above this value", "0.1");
  p.add(wm, "jobs", "worker threads", "1");

  auto* stack = app.add_subcommand("stack", "distinct stack of height >= N and measure >= b/r");
  p.add(stack, "N", "minimum height");
  p.add(stack, "step-cap", "maximum interval steps", "1000000");
  p.add(stack, "idoc-depth", "required aperiodicity probe depth (0 skips)", "10000");
  p.add(stack, "trim", "apply the middle-third trim (true/false)", "false");

  auto* idoc = app.add_subcommand("idoc", "look for f^m(d_i) = d_j");
  p.add(idoc, "depth", "maximum m", "10000");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  auto flag = [&](CLI::App* cmd, const std::string& name) {
    const std::string& v = p.get(cmd, name);
    if (v == "true" || v == "1") return 1;
    if (v == "false" || v == "0") return 0;
    usage("--" + name + ": expected true or false, got '" + v + "'");
  };

  try {
    std::unique_ptr<iet_config, ConfigDeleter> cfg;
    if (!config_path.empty()) {
      iet_config* c = nullptr;
      check(iet_config_load(config_path.c_str(), &c));
      cfg.reset(c);
    }
    p.resolve(cfg.get());

    std::unique_ptr<iet_map, MapDeleter> f;
    {
      iet_map* m = nullptr;
      if (cfg && (!lengths.empty() || !perm.empty())) usage("give either --config or --lengths/--perm");
      if (cfg) {
        check(iet_map_from_config(cfg.get(), &m));
      } else if (!lengths.empty() || !perm.empty()) {
        if (lengths.empty() || perm.empty()) usage("--lengths and --perm go together");
        check(iet_map_create(lengths.c_str(), perm.c_str(), &m));
      } else {
        check(iet_map_golden(&m));
      }
      f.reset(m);
    }

    if (format.empty()) {
      const char* from_config = cfg ? iet_config_param(cfg.get(), "format") : nullptr;
      if (from_config != nullptr) format = from_config;
    }
    const char* fmt = format.empty() ? nullptr : format.c_str();
    char* out = nullptr;

    if (eval->parsed()) {
      const std::string x = p.required(eval, "x");
      if (flag(eval, "inverse")) {
        char* y = nullptr;
        check(iet_map_eval_inverse(f.get(), x.c_str(), &y));
        const std::string value = take(y);
        if (fmt != nullptr && format != "text") usage("eval --inverse supports only text output");
        out = static_cast<char*>(std::malloc(value.size() + 2));
        std::snprintf(out, value.size() + 2, "%s\n", value.c_str());
      } else {
        check(iet_cmd_eval(f.get(), x.c_str(), fmt, &out));
      }
    } else if (orbit->parsed()) {
      check(iet_cmd_orbit(f.get(), p.required(orbit, "x").c_str(), p.integer(orbit, "n"),
                          flag(orbit, "symmetric"), fmt, &out));
    } else if (induce->parsed()) {
      check(iet_cmd_induce(f.get(), p.required(induce, "t").c_str(), p.integer(induce, "step-cap"),
                           p.integer(induce, "idoc-depth"), fmt, &out));
    } else if (psi->parsed()) {
      check(iet_cmd_psi(f.get(), p.required(psi, "t").c_str(), p.integer(psi, "N"), flag(psi, "phi"), fmt,
                        &out));
    } else if (scan->parsed()) {
      const long jobs = p.integer(scan, "jobs");
      if (jobs < 1) usage("--jobs must be at least 1");
      check(iet_cmd_scan(f.get(), p.required(scan, "grid").c_str(), p.integer(scan, "N"),
                         p.optional(scan, "threshold"), static_cast<unsigned>(jobs), fmt, &out));
    } else if (wm->parsed()) {
      const long jobs = p.integer(wm, "jobs");
      if (jobs < 1) usage("--jobs must be at least 1");
      check(iet_cmd_wm(f.get(), p.required(wm, "t").c_str(), p.integer(wm, "N"), p.integer(wm, "grid-size"),
                       p.optional(wm, "x"), to_double("peak-threshold", p.required(wm, "peak-threshold")),
                       static_cast<unsigned>(jobs), fmt, &out));
    } else if (stack->parsed()) {
      check(iet_cmd_stack(f.get(), p.integer(stack, "N"), p.integer(stack, "step-cap"),
                          p.integer(stack, "idoc-depth"), flag(stack, "trim"), fmt, &out));
    } else if (idoc->parsed()) {
      check(iet_cmd_idoc(f.get(), p.integer(idoc, "depth"), fmt, &out));
    }

    const std::string text = take(out);
    if (output.empty()) {
      std::cout << text;
      std::cout.flush();
    } else {
      std::ofstream file(output, std::ios::binary);
      file << text;
      if (!file) usage("cannot write '" + output + "'");
    }
    return kExitOk;
  } catch (const Failure& e) {
    std::cerr << "iet: " << e.message << '\n';
    return e.code;
  }
}
