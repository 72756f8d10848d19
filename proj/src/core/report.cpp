#include "iet/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "iet/error.hpp"

namespace iet {
namespace {

using json = nlohmann::ordered_json;

json number(double v) { return std::stod(format_double(v)); }

std::string hex64(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

json iet_json(const IntervalExchange& f) {
  json ls = json::array();
  for (const auto& l : f.lengths()) ls.push_back(l.render());
  return json{{"lengths", std::move(ls)}, {"perm", f.permutation().images()}};
}

json header(const char* command) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}};
}

std::string finish(const json& doc) { return doc.dump(2) + "\n"; }

[[noreturn]] void unsupported(const char* command, Format fmt) {
  static const char* names[] = {"text", "json", "csv", "jsonl"};
  throw Error(ErrorCode::kConfig, std::string(command) + " does not support --format " +
                                      names[static_cast<int>(fmt)]);
}

const char* defect_name(StackDefect d) {
  switch (d) {
    case StackDefect::kS1: return "s1";
    case StackDefect::kS2: return "s2";
    case StackDefect::kOverlap: return "overlap";
  }
  return "?";
}

json hit_json(const std::optional<DPrimeHit>& h) {
  if (!h) return nullptr;
  return json{{"index", h->index}, {"discontinuity", h->discontinuity}};
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "text") return Format::kText;
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  if (name == "jsonl") return Format::kJsonl;
  throw Error(ErrorCode::kConfig, "unknown format '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string report_eval(const Scalar& y, Format fmt) {
  switch (fmt) {
    case Format::kText: return y.render() + "\n";
    case Format::kJson: {
      json doc = header("eval");
      doc["value"] = y.render();
      doc["float"] = number(y.to_double());
      return finish(doc);
    }
    default: unsupported("eval", fmt);
  }
}

std::string report_orbit(const OrbitWindow& w, Format fmt) {
  std::ostringstream out;
  switch (fmt) {
    case Format::kText:
      for (long k = w.first; k <= w.last(); ++k) out << k << ' ' << w.at(k).render() << '\n';
      return out.str();
    case Format::kCsv:
      out << "# schema_version=" << kSchemaVersion << " command=orbit\n";
      out << "k,value,float\n";
      for (long k = w.first; k <= w.last(); ++k) {
        out << k << ',' << w.at(k).render() << ',' << format_double(w.at(k).to_double()) << '\n';
      }
      return out.str();
    case Format::kJson: {
      json doc = header("orbit");
      json pts = json::array();
      for (long k = w.first; k <= w.last(); ++k) {
        pts.push_back(json{{"k", k}, {"value", w.at(k).render()}, {"float", number(w.at(k).to_double())}});
      }
      doc["points"] = std::move(pts);
      return finish(doc);
    }
    default: unsupported("orbit", fmt);
  }
}

std::string report_induce(const IntervalExchange& f, const InducedMap& g, long idoc_depth,
                          const std::optional<IdocCollision>& idoc, Format fmt) {
  std::string note;
  if (idoc) {
    note = "f^" + std::to_string(idoc->steps) + "(d_" + std::to_string(idoc->from) + ") = d_" +
           std::to_string(idoc->to) + ": f is not aperiodic";
  }
  std::ostringstream out;
  switch (fmt) {
    case Format::kText:
      out << "t = " << g.threshold().render() << "\n";
      out << "s(t) = " << g.piece_count() << "\n";
      if (idoc) out << "note: " << note << "\n";
      out << "lo hi return_time translation\n";
      for (const auto& p : g.pieces()) {
        out << p.interval.lo.render() << ' ' << p.interval.hi.render() << ' ' << p.return_time << ' '
            << p.translation.render() << '\n';
      }
      return out.str();
    case Format::kCsv:
      out << "# schema_version=" << kSchemaVersion << " command=induce t=" << g.threshold().render()
          << " s=" << g.piece_count() << "\n";
      out << "lo,hi,return_time,translation\n";
      for (const auto& p : g.pieces()) {
        out << p.interval.lo.render() << ',' << p.interval.hi.render() << ',' << p.return_time << ','
            << p.translation.render() << '\n';
      }
      return out.str();
    case Format::kJson: {
      json doc = header("induce");
      doc["iet"] = iet_json(f);
      doc["t"] = g.threshold().render();
      doc["s"] = g.piece_count();
      json pieces = json::array();
      for (const auto& p : g.pieces()) {
        pieces.push_back(json{{"lo", p.interval.lo.render()},
                              {"hi", p.interval.hi.render()},
                              {"return_time", p.return_time},
                              {"translation", p.translation.render()}});
      }
      doc["pieces"] = std::move(pieces);
      doc["tower_mass"] = g.tower_mass().render();
      doc["idoc_depth"] = idoc_depth;
      doc["idoc"] = idoc ? json(note) : json(idoc_depth > 0 ? "Ok" : "skipped");
      return finish(doc);
    }
    default: unsupported("induce", fmt);
  }
}

std::string report_psi(const PsiRecordSeries& s, Format fmt) {
  const char* kind = s.kind == SeparationKind::kPsi ? "psi" : "phi";
  std::ostringstream out;
  switch (fmt) {
    case Format::kText:
      out << kind << " records for t = " << s.t.render() << ", N = " << s.horizon << "\n";
      out << "n value float record\n";
      for (const auto& e : s.entries) {
        out << e.n << ' ' << e.value.render() << ' ' << format_double(e.value.to_double()) << ' '
            << (e.is_record ? "*" : "-") << '\n';
      }
      out << "psi_hat = " << s.psi_hat.render() << " (" << format_double(s.psi_hat.to_double())
          << ") at n = " << s.best_n << (s.valid ? "" : " [invalid]") << '\n';
      if (s.dprime) out << "orbit meets d_" << s.dprime->discontinuity << " at k = " << s.dprime->index << '\n';
      return out.str();
    case Format::kCsv:
      out << "# schema_version=" << kSchemaVersion << " command=" << kind << " t=" << s.t.render()
          << " horizon=" << s.horizon << " schedule_hash=" << hex64(s.schedule_hash)
          << " psi_hat=" << s.psi_hat.render() << " valid=" << (s.valid ? "true" : "false") << '\n';
      out << "n,value,float,record\n";
      for (const auto& e : s.entries) {
        out << e.n << ',' << e.value.render() << ',' << format_double(e.value.to_double()) << ','
            << (e.is_record ? "true" : "false") << '\n';
      }
      return out.str();
    case Format::kJson: {
      json doc = header(kind);
      doc["t"] = s.t.render();
      doc["horizon"] = s.horizon;
      doc["schedule"] = "hybrid";
      doc["schedule_hash"] = hex64(s.schedule_hash);
      doc["valid"] = s.valid;
      doc["psi_hat"] = s.psi_hat.render();
      doc["psi_hat_float"] = number(s.psi_hat.to_double());
      doc["best_n"] = s.best_n;
      doc["zero_at"] = s.zero_at ? json(*s.zero_at) : json(nullptr);
      doc["dprime"] = hit_json(s.dprime);
      doc["record_count"] = s.record_count();
      json entries = json::array();
      for (const auto& e : s.entries) {
        entries.push_back(json{{"n", e.n},
                               {"value", e.value.render()},
                               {"float", number(e.value.to_double())},
                               {"record", e.is_record}});
      }
      doc["entries"] = std::move(entries);
      doc["note"] = "tail-window maximum over a finite horizon; evidence, not a limit";
      return finish(doc);
    }
    default: unsupported("psi", fmt);
  }
}

std::string report_scan(const IntervalExchange& f, const ScanResult& r, Format fmt) {
  const std::string threshold = r.threshold ? r.threshold->render() : "inf";
  std::ostringstream out;
  switch (fmt) {
    case Format::kText:
    case Format::kCsv:
      out << "# schema_version=" << kSchemaVersion << " command=scan horizon=" << r.horizon
          << " schedule_hash=" << hex64(r.schedule_hash) << " threshold=" << threshold << '\n';
      out << "t,classification,psi_hat,record_count,best_n,best_value_exact,dprime_depth\n";
      for (const auto& row : r.rows) {
        out << row.t.render() << ',' << scan_class_name(row.cls) << ','
            << format_double(row.psi_hat.to_double()) << ',' << row.record_count << ',' << row.best_n
            << ',' << (row.best_n > 0 ? row.best_value.render() : "") << ','
            << (row.dprime_index ? std::to_string(*row.dprime_index) : "") << '\n';
      }
      return out.str();
    case Format::kJson: {
      json doc = header("scan");
      doc["iet"] = iet_json(f);
      doc["horizon"] = r.horizon;
      doc["schedule_hash"] = hex64(r.schedule_hash);
      doc["threshold"] = threshold;
      json counts = json{{"DPrimeHit", 0}, {"PsiPositiveEvidence", 0}, {"Undecided", 0}};
      json rows = json::array();
      for (const auto& row : r.rows) {
        counts[scan_class_name(row.cls)] = counts[scan_class_name(row.cls)].get<int>() + 1;
        rows.push_back(json{{"t", row.t.render()},
                            {"classification", scan_class_name(row.cls)},
                            {"psi_hat", number(row.psi_hat.to_double())},
                            {"record_count", row.record_count},
                            {"best_n", row.best_n},
                            {"best_value", row.best_n > 0 ? json(row.best_value.render()) : json(nullptr)},
                            {"dprime_depth", row.dprime_index ? json(*row.dprime_index) : json(nullptr)}});
      }
      doc["counts"] = std::move(counts);
      doc["rows"] = std::move(rows);
      return finish(doc);
    }
    default: unsupported("scan", fmt);
  }
}

std::string report_wm(const WeylScan& s, Format fmt) {
  auto point_json = [](const WeylPoint& p) {
    return json{{"alpha", number(p.alpha)},
                {"V_N", number(p.v_n)},
                {"V_2N", number(p.v_2n)},
                {"persistent", p.persistent}};
  };
  std::ostringstream out;
  switch (fmt) {
    case Format::kCsv:
      out << "# schema_version=" << kSchemaVersion << " command=wm t=" << s.t.render()
          << " x=" << s.x.render() << " horizon=" << s.horizon << " grid_size=" << s.grid_size << '\n';
      out << "alpha,V_N,V_2N,persistent\n";
      for (const auto& p : s.grid) {
        out << format_double(p.alpha) << ',' << format_double(p.v_n) << ',' << format_double(p.v_2n)
            << ',' << (p.persistent ? "true" : "false") << '\n';
      }
      return out.str();
    case Format::kText:
      out << "t = " << s.t.render() << ", x = " << s.x.render() << ", N = " << s.horizon
          << ", grid = " << s.grid_size << '\n';
      out << "alpha V_N V_2N persistent\n";
      for (const auto& p : s.candidates) {
        out << format_double(p.alpha) << ' ' << format_double(p.v_n) << ' ' << format_double(p.v_2n)
            << ' ' << (p.persistent ? "yes" : "no") << '\n';
      }
      return out.str();
    case Format::kJson: {
      json doc = header("wm");
      doc["t"] = s.t.render();
      doc["x"] = s.x.render();
      doc["horizon"] = s.horizon;
      doc["grid_size"] = s.grid_size;
      doc["peak_threshold"] = number(s.peak_threshold);
      doc["persistence_tolerance"] = number(kPersistenceTolerance);
      doc["determinism"] = "no random input; identical arguments give identical output";
      doc["note"] = "finite-horizon Weyl sums are evidence about eigenvalues, not a verdict";
      json peaks = json::array();
      for (const auto& p : s.peaks) peaks.push_back(point_json(p));
      doc["peaks"] = std::move(peaks);
      json cands = json::array();
      for (const auto& p : s.candidates) cands.push_back(point_json(p));
      doc["candidates"] = std::move(cands);
      json grid = json::array();
      for (const auto& p : s.grid) grid.push_back(point_json(p));
      doc["grid"] = std::move(grid);
      return finish(doc);
    }
    default: unsupported("wm", fmt);
  }
}

std::string report_stack(const IntervalExchange& f, const TallStack& tall, const Stack& shown,
                         bool trimmed, const std::optional<StackViolation>& check, Format fmt) {
  json verify = check ? json{{"level", check->level}, {"which", defect_name(check->which)}} : json("Ok");
  json meta = header("stack");
  meta["iet"] = iet_json(f);
  meta["anchor"] = tall.anchor.render();
  meta["induced_pieces"] = tall.induced_pieces;
  meta["tower_index"] = tall.tower_index + 1;
  meta["trimmed"] = trimmed;
  meta["height"] = shown.height();
  meta["width"] = shown.width().render();
  meta["measure"] = shown.measure().render();
  meta["measure_float"] = number(shown.measure().to_double());
  meta["distinct"] = shown.distinct();
  meta["verify_stack"] = verify;
  std::ostringstream out;
  switch (fmt) {
    case Format::kJson: {
      json levels = json::array();
      for (std::size_t k = 0; k < shown.levels().size(); ++k) {
        const auto& l = shown.levels()[k];
        levels.push_back(json{{"level", k + 1}, {"lo", l.lo.render()}, {"hi", l.hi.render()}});
      }
      meta["levels"] = std::move(levels);
      return finish(meta);
    }
    case Format::kJsonl:
      out << meta.dump() << '\n';
      for (std::size_t k = 0; k < shown.levels().size(); ++k) {
        const auto& l = shown.levels()[k];
        out << json{{"level", k + 1}, {"lo", l.lo.render()}, {"hi", l.hi.render()}}.dump() << '\n';
      }
      return out.str();
    case Format::kText:
      out << "height = " << shown.height() << "\nwidth = " << shown.width().render()
          << "\nmeasure = " << shown.measure().render() << " (" << format_double(shown.measure().to_double())
          << ")\ndistinct = " << (shown.distinct() ? "true" : "false") << "\nverify_stack = "
          << (check ? std::string(defect_name(check->which)) + " at level " + std::to_string(check->level)
                    : std::string("Ok"))
          << '\n';
      return out.str();
    default: unsupported("stack", fmt);
  }
}

std::string report_idoc(const IntervalExchange& f, long depth, const std::optional<IdocCollision>& c,
                        Format fmt) {
  switch (fmt) {
    case Format::kText:
      if (!c) return "Ok up to depth " + std::to_string(depth) + "\n";
      return "Collision: f^" + std::to_string(c->steps) + "(d_" + std::to_string(c->from) + ") = d_" +
             std::to_string(c->to) + "\n";
    case Format::kJson: {
      json doc = header("idoc");
      doc["iet"] = iet_json(f);
      doc["depth"] = depth;
      if (c) {
        doc["result"] = "Collision";
        doc["collision"] = json{{"m", c->steps}, {"from", c->from}, {"to", c->to}};
      } else {
        doc["result"] = "Ok";
      }
      return finish(doc);
    }
    default: unsupported("idoc", fmt);
  }
}

}  // namespace iet
