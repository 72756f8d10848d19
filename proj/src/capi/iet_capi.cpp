#include "iet/iet.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "iet/config.hpp"
#include "iet/diophantine.hpp"
#include "iet/error.hpp"
#include "iet/induction.hpp"
#include "iet/interval_exchange.hpp"
#include "iet/report.hpp"
#include "iet/spectral.hpp"

struct iet_config {
  iet::RunConfig cfg;
};
struct iet_map {
  iet::IntervalExchange f;
};
struct iet_induced {
  iet::InducedMap g;
};
struct iet_stack {
  iet::Stack s;
};

namespace {

thread_local std::string last_error;

struct ArgumentError {
  const char* what;
};

iet_status status_of(iet::ErrorCode c) {
  switch (c) {
    case iet::ErrorCode::kParse: return IET_ERR_PARSE;
    case iet::ErrorCode::kDomain: return IET_ERR_DOMAIN;
    case iet::ErrorCode::kDivisionByZero: return IET_ERR_DIVISION_BY_ZERO;
    case iet::ErrorCode::kFieldMismatch: return IET_ERR_FIELD_MISMATCH;
    case iet::ErrorCode::kStepCapExceeded: return IET_ERR_STEP_CAP;
    case iet::ErrorCode::kPrecondition: return IET_ERR_PRECONDITION;
    case iet::ErrorCode::kConfig: return IET_ERR_CONFIG;
  }
  return IET_ERR_INTERNAL;
}

template <class Fn>
iet_status guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return IET_OK;
  } catch (const ArgumentError& e) {
    last_error = e.what;
    return IET_ERR_ARGUMENT;
  } catch (const iet::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return IET_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return IET_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return IET_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw ArgumentError{what};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

iet::Scalar scalar(const char* text, const char* what) {
  need(text, what);
  return iet::Scalar::parse(text);
}

iet::Format format_or(const char* name, iet::Format fallback) {
  return name == nullptr ? fallback : iet::parse_format(name);
}

template <class T, class... Args>
T* make(Args&&... args) {
  return new T{std::forward<Args>(args)...};
}

}  // namespace

extern "C" {

const char* iet_last_error(void) { return last_error.c_str(); }

const char* iet_status_name(iet_status status) {
  switch (status) {
    case IET_OK: return "ok";
    case IET_ERR_PARSE: return "parse error";
    case IET_ERR_DOMAIN: return "domain error";
    case IET_ERR_DIVISION_BY_ZERO: return "division by zero";
    case IET_ERR_FIELD_MISMATCH: return "field mismatch";
    case IET_ERR_STEP_CAP: return "step cap exceeded";
    case IET_ERR_PRECONDITION: return "precondition failed";
    case IET_ERR_CONFIG: return "config error";
    case IET_ERR_ARGUMENT: return "invalid argument";
    case IET_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void iet_string_free(char* s) { std::free(s); }

iet_status iet_config_load(const char* path, iet_config** out) {
  return guard([&] {
    need(path, "path is NULL");
    need(out, "out is NULL");
    *out = make<iet_config>(iet::load_config(path));
  });
}

iet_status iet_config_parse(const char* text, iet_config** out) {
  return guard([&] {
    need(text, "text is NULL");
    need(out, "out is NULL");
    *out = make<iet_config>(iet::parse_config(text));
  });
}

const char* iet_config_param(const iet_config* cfg, const char* key) {
  if (cfg == nullptr || key == nullptr) return nullptr;
  auto it = cfg->cfg.params.find(key);
  return it == cfg->cfg.params.end() ? nullptr : it->second.c_str();
}

void iet_config_destroy(iet_config* cfg) { delete cfg; }

iet_status iet_map_create(const char* lengths, const char* perm, iet_map** out) {
  return guard([&] {
    need(lengths, "lengths is NULL");
    need(perm, "perm is NULL");
    need(out, "out is NULL");
    *out = make<iet_map>(iet::iet_from_text(lengths, perm));
  });
}

iet_status iet_map_from_config(const iet_config* cfg, iet_map** out) {
  return guard([&] {
    need(cfg, "config is NULL");
    need(out, "out is NULL");
    *out = make<iet_map>(cfg->cfg.build());
  });
}

iet_status iet_map_golden(iet_map** out) {
  return guard([&] {
    need(out, "out is NULL");
    *out = make<iet_map>(iet::golden_rotation());
  });
}

void iet_map_destroy(iet_map* f) { delete f; }

size_t iet_map_size(const iet_map* f) { return f == nullptr ? 0 : f->f.size(); }

iet_status iet_map_render(const iet_map* f, char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    *out = dup(iet::render_iet(f->f));
  });
}

iet_status iet_map_eval(const iet_map* f, const char* x, char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    *out = dup(f->f.evaluate(scalar(x, "x is NULL")).render());
  });
}

iet_status iet_map_eval_inverse(const iet_map* f, const char* y, char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    *out = dup(f->f.evaluate_inverse(scalar(y, "y is NULL")).render());
  });
}

iet_status iet_map_idoc(const iet_map* f, long depth, int* ok) {
  return guard([&] {
    need(f, "map is NULL");
    need(ok, "ok is NULL");
    if (depth < 1) throw iet::Error(iet::ErrorCode::kDomain, "depth must be at least 1");
    *ok = iet::check_idoc(f->f, depth) ? 0 : 1;
  });
}

iet_status iet_induce(const iet_map* f, const char* t, long step_cap, iet_induced** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    *out = make<iet_induced>(iet::induce(f->f, scalar(t, "t is NULL"), step_cap));
  });
}

size_t iet_induced_piece_count(const iet_induced* g) { return g == nullptr ? 0 : g->g.piece_count(); }

iet_status iet_induced_piece(const iet_induced* g, size_t index, char** lo, char** hi,
                             long* return_time, char** translation) {
  return guard([&] {
    need(g, "induced map is NULL");
    if (index >= g->g.piece_count()) throw ArgumentError{"piece index out of range"};
    const auto& p = g->g.pieces()[index];
    std::unique_ptr<char, decltype(&std::free)> l(lo ? dup(p.interval.lo.render()) : nullptr, &std::free);
    std::unique_ptr<char, decltype(&std::free)> h(hi ? dup(p.interval.hi.render()) : nullptr, &std::free);
    std::unique_ptr<char, decltype(&std::free)> w(translation ? dup(p.translation.render()) : nullptr,
                                                  &std::free);
    if (lo) *lo = l.release();
    if (hi) *hi = h.release();
    if (translation) *translation = w.release();
    if (return_time) *return_time = p.return_time;
  });
}

iet_status iet_induced_eval(const iet_induced* g, const char* x, char** out) {
  return guard([&] {
    need(g, "induced map is NULL");
    need(out, "out is NULL");
    *out = dup(g->g.evaluate(scalar(x, "x is NULL")).render());
  });
}

void iet_induced_destroy(iet_induced* g) { delete g; }

iet_status iet_stack_build_tall(const iet_map* f, long min_height, long step_cap, iet_stack** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    *out = make<iet_stack>(iet::build_tall_stack(f->f, min_height, step_cap).stack);
  });
}

iet_status iet_stack_from_window(const iet_map* f, const char* x, long n, const char* eps,
                                 iet_stack** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    *out = make<iet_stack>(
        iet::stack_from_window(f->f, scalar(x, "x is NULL"), n, scalar(eps, "eps is NULL")));
  });
}

iet_status iet_stack_trim(const iet_stack* s, iet_stack** out) {
  return guard([&] {
    need(s, "stack is NULL");
    need(out, "out is NULL");
    *out = make<iet_stack>(iet::trim_stack(s->s));
  });
}

size_t iet_stack_height(const iet_stack* s) { return s == nullptr ? 0 : s->s.height(); }

int iet_stack_distinct(const iet_stack* s) { return s != nullptr && s->s.distinct() ? 1 : 0; }

iet_status iet_stack_measure(const iet_stack* s, char** out) {
  return guard([&] {
    need(s, "stack is NULL");
    need(out, "out is NULL");
    *out = dup(s->s.measure().render());
  });
}

iet_status iet_stack_verify(const iet_map* f, const iet_stack* s, int* ok, size_t* level, int* defect) {
  return guard([&] {
    need(f, "map is NULL");
    need(s, "stack is NULL");
    need(ok, "ok is NULL");
    auto v = iet::verify_stack(f->f, s->s);
    *ok = v ? 0 : 1;
    if (level) *level = v ? v->level : 0;
    if (defect) *defect = v ? static_cast<int>(v->which) + 1 : 0;
  });
}

void iet_stack_destroy(iet_stack* s) { delete s; }

iet_status iet_separation(const iet_map* f, const char* x, long n, char** rho_n, char** delta_n,
                          char** rho_prime_n) {
  return guard([&] {
    need(f, "map is NULL");
    auto p = iet::separation_profile(f->f, scalar(x, "x is NULL"), n);
    std::unique_ptr<char, decltype(&std::free)> a(rho_n ? dup(p.rho_n.render()) : nullptr, &std::free);
    std::unique_ptr<char, decltype(&std::free)> b(delta_n ? dup(p.delta_n.render()) : nullptr, &std::free);
    std::unique_ptr<char, decltype(&std::free)> c(rho_prime_n ? dup(p.rho_prime_n.render()) : nullptr,
                                                  &std::free);
    if (rho_n) *rho_n = a.release();
    if (delta_n) *delta_n = b.release();
    if (rho_prime_n) *rho_prime_n = c.release();
  });
}

iet_status iet_boundary_averages(const iet_map* f, const char* t, double alpha, long n, const char* eps,
                                 long density, long horizon, double out[12]) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    auto r = iet::boundary_averages(f->f, scalar(t, "t is NULL"), alpha, n, scalar(eps, "eps is NULL"),
                                    density, horizon);
    const std::complex<double> values[6] = {r.alpha[0], r.alpha[1], r.beta[0],
                                            r.beta[1],  r.gamma[0], r.gamma[1]};
    for (int i = 0; i < 6; ++i) {
      out[2 * i] = values[i].real();
      out[2 * i + 1] = values[i].imag();
    }
  });
}

iet_status iet_cmd_eval(const iet_map* f, const char* x, const char* format, char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    auto fmt = format_or(format, iet::Format::kText);
    *out = dup(iet::report_eval(f->f.evaluate(scalar(x, "x is NULL")), fmt));
  });
}

iet_status iet_cmd_orbit(const iet_map* f, const char* x, long n, int symmetric, const char* format,
                         char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    auto fmt = format_or(format, iet::Format::kText);
    *out = dup(iet::report_orbit(iet::orbit_window(f->f, scalar(x, "x is NULL"), n, symmetric != 0), fmt));
  });
}

iet_status iet_cmd_induce(const iet_map* f, const char* t, long step_cap, long idoc_depth,
                          const char* format, char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    auto fmt = format_or(format, iet::Format::kJson);
    auto tt = scalar(t, "t is NULL");
    std::optional<iet::IdocCollision> collision;
    if (idoc_depth > 0) collision = iet::check_idoc(f->f, idoc_depth);
    auto g = iet::induce(f->f, tt, step_cap);
    *out = dup(iet::report_induce(f->f, g, idoc_depth, collision, fmt));
  });
}

iet_status iet_cmd_psi(const iet_map* f, const char* t, long horizon, int phi, const char* format,
                       char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    auto fmt = format_or(format, iet::Format::kJson);
    auto schedule = iet::SampleSchedule::hybrid(horizon);
    auto kind = phi ? iet::SeparationKind::kPhi : iet::SeparationKind::kPsi;
    *out = dup(iet::report_psi(iet::psi_records(f->f, scalar(t, "t is NULL"), schedule, kind), fmt));
  });
}

iet_status iet_cmd_scan(const iet_map* f, const char* grid, long horizon, const char* threshold,
                        unsigned jobs, const char* format, char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(grid, "grid is NULL");
    need(out, "out is NULL");
    auto fmt = format_or(format, iet::Format::kCsv);
    iet::Threshold th = iet::default_threshold(f->f);
    if (threshold != nullptr) {
      if (std::string(threshold) == "inf") {
        th.reset();
      } else {
        th = iet::Scalar::parse(threshold);
      }
    }
    auto points = iet::parse_grid(grid);
    *out = dup(iet::report_scan(f->f, iet::scan_critical(f->f, points, horizon, th, jobs), fmt));
  });
}

iet_status iet_cmd_wm(const iet_map* f, const char* t, long horizon, long grid_size, const char* x,
                      double peak_threshold, unsigned jobs, const char* format, char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    auto fmt = format_or(format, iet::Format::kJson);
    std::optional<iet::Scalar> base;
    if (x != nullptr) base = iet::Scalar::parse(x);
    auto scan = iet::eigenvalue_scan(f->f, scalar(t, "t is NULL"), grid_size, horizon, base,
                                     peak_threshold, jobs);
    *out = dup(iet::report_wm(scan, fmt));
  });
}

iet_status iet_cmd_stack(const iet_map* f, long min_height, long step_cap, long idoc_depth, int trim,
                         const char* format, char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    auto fmt = format_or(format, iet::Format::kJson);
    if (idoc_depth > 0) {
      if (auto c = iet::check_idoc(f->f, idoc_depth)) {
        throw iet::Error(iet::ErrorCode::kPrecondition,
                         "f^" + std::to_string(c->steps) + "(d_" + std::to_string(c->from) + ") = d_" +
                             std::to_string(c->to) + ": stack construction needs an aperiodic map");
      }
    }
    auto tall = iet::build_tall_stack(f->f, min_height, step_cap);
    if (trim) {
      auto z = iet::trim_stack(tall.stack);
      *out = dup(iet::report_stack(f->f, tall, z, true, iet::verify_stack(f->f, z), fmt));
    } else {
      *out = dup(iet::report_stack(f->f, tall, tall.stack, false, iet::verify_stack(f->f, tall.stack), fmt));
    }
  });
}

iet_status iet_cmd_idoc(const iet_map* f, long depth, const char* format, char** out) {
  return guard([&] {
    need(f, "map is NULL");
    need(out, "out is NULL");
    if (depth < 1) throw iet::Error(iet::ErrorCode::kDomain, "depth must be at least 1");
    auto fmt = format_or(format, iet::Format::kJson);
    *out = dup(iet::report_idoc(f->f, depth, iet::check_idoc(f->f, depth), fmt));
  });
}

}  // extern "C"
