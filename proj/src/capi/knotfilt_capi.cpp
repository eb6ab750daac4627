#include "knotfilt/knotfilt.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <optional>
#include <new>
#include <string>
#include <vector>

#include "common/errors.hpp"
#include "io/formats.hpp"
#include "io/reports.hpp"

struct kf_grid {
  knotfilt::grid::GridDiagram diagram;
  std::string digest;
};

struct kf_complex {
  knotfilt::io::ComplexData data;
  std::string digest;
};

namespace {

using knotfilt::io::Report;
using nlohmann::json;

thread_local std::string last_error;

kf_status fail(kf_status status, const std::string& message) {
  last_error = message;
  return status;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string digest_of(const std::string& text) { return "fnv1a64:" + knotfilt::io::hex64(knotfilt::io::fnv1a(text)); }

// Runs `body`, translating exceptions into status codes.
template <class F>
kf_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const knotfilt::InputError& e) {
    return fail(KF_ERR_INPUT, e.what());
  } catch (const knotfilt::ResourceError& e) {
    return fail(KF_ERR_RESOURCE, e.what());
  } catch (const knotfilt::InvariantViolation& e) {
    return fail(KF_ERR_THEOREM, e.what());
  } catch (const std::bad_alloc&) {
    return fail(KF_ERR_RESOURCE, "out of memory");
  } catch (const std::exception& e) {
    return fail(KF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(KF_ERR_INTERNAL, "unknown error");
  }
}

kf_status emit(const Report& rep, const json& inputs, char** out_json) {
  json doc;
  doc["inputs"] = inputs;
  doc["results"] = rep.results;
  doc["warnings"] = rep.warnings;
  kf_status status = KF_OK;
  std::string label = "ok";
  if (rep.input_invalid) {
    status = KF_ERR_INPUT;
    label = "invalid_input";
    last_error = "input failed validation";
  } else if (rep.theorem_violated) {
    status = KF_ERR_THEOREM;
    label = "theorem_violated";
    last_error = "a theorem-level invariant failed on the computed data";
  }
  doc["status"] = label;
  *out_json = dup_string(doc.dump(2) + "\n");
  return status;
}

knotfilt::grid::GridOptions grid_options(const kf_options* options) {
  knotfilt::grid::GridOptions out;
  if (options != nullptr) {
    if (options->max_grid_size < 2) throw knotfilt::InputError("max grid size must be at least 2");
    if (options->threads < 0) throw knotfilt::InputError("thread count must be nonnegative");
    out.max_size = options->max_grid_size;
    out.threads = options->threads;
  }
  return out;
}

void require_top(const char* class_name) {
  if (class_name != nullptr && std::string(class_name) != "top") {
    throw knotfilt::InputError("unknown class selector '" + std::string(class_name) + "' (only 'top')");
  }
}

template <class T>
kf_status check_out(T** out) {
  if (out == nullptr) return fail(KF_ERR_INPUT, "null output pointer");
  *out = nullptr;
  return KF_OK;
}

json grid_inputs(const kf_grid* g) { return {{"kind", "grid"}, {"digest", g->digest}}; }

json complex_inputs(const kf_complex* c) {
  bool knot = std::holds_alternative<knotfilt::knot::KnotComplex>(c->data);
  return {{"kind", knot ? "knot" : "filtered"}, {"digest", c->digest}};
}

json number_inputs(const std::string& text) { return {{"kind", "numbers"}, {"digest", digest_of(text)}}; }

}  // namespace

extern "C" {

const char* kf_version(void) { return "1.0.0"; }

const char* kf_last_error(void) { return last_error.c_str(); }

void kf_string_free(char* s) { std::free(s); }

void kf_options_init(kf_options* options) {
  if (options == nullptr) return;
  options->max_grid_size = knotfilt::grid::kDefaultMaxGridSize;
  options->threads = 0;
}

kf_status kf_grid_parse(const char* text, kf_grid** out) {
  if (auto s = check_out(out); s != KF_OK) return s;
  if (text == nullptr) return fail(KF_ERR_INPUT, "null grid text");
  return guarded([&] {
    auto g = std::make_unique<kf_grid>();
    g->diagram = knotfilt::grid::parse_grid(text);
    g->digest = digest_of(knotfilt::grid::format_grid(g->diagram));
    *out = g.release();
    return KF_OK;
  });
}

kf_status kf_grid_load(const char* path, kf_grid** out) {
  if (auto s = check_out(out); s != KF_OK) return s;
  if (path == nullptr) return fail(KF_ERR_INPUT, "null path");
  return guarded([&] {
    std::string text = knotfilt::io::read_file(path);
    return kf_grid_parse(text.c_str(), out);
  });
}

void kf_grid_free(kf_grid* grid) { delete grid; }

kf_status kf_grid_size(const kf_grid* grid, int* n) {
  if (grid == nullptr || n == nullptr) return fail(KF_ERR_INPUT, "null argument");
  *n = grid->diagram.n;
  return KF_OK;
}

kf_status kf_complex_parse(const char* text, kf_complex** out) {
  if (auto s = check_out(out); s != KF_OK) return s;
  if (text == nullptr) return fail(KF_ERR_INPUT, "null complex text");
  return guarded([&] {
    auto c = std::unique_ptr<kf_complex>(new kf_complex{knotfilt::io::parse_complex(text), digest_of(text)});
    *out = c.release();
    return KF_OK;
  });
}

kf_status kf_complex_load(const char* path, kf_complex** out) {
  if (auto s = check_out(out); s != KF_OK) return s;
  if (path == nullptr) return fail(KF_ERR_INPUT, "null path");
  return guarded([&] {
    std::string text = knotfilt::io::read_file(path);
    return kf_complex_parse(text.c_str(), out);
  });
}

void kf_complex_free(kf_complex* complex) { delete complex; }

kf_status kf_complex_is_knot(const kf_complex* complex, int* is_knot) {
  if (complex == nullptr || is_knot == nullptr) return fail(KF_ERR_INPUT, "null argument");
  *is_knot = std::holds_alternative<knotfilt::knot::KnotComplex>(complex->data) ? 1 : 0;
  return KF_OK;
}

kf_status kf_validate_grid(const kf_grid* grid, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (grid == nullptr) return fail(KF_ERR_INPUT, "null grid");
  return guarded([&] { return emit(knotfilt::io::validate_grid_report(grid->diagram), grid_inputs(grid), out_json); });
}

kf_status kf_validate_complex(const kf_complex* complex, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (complex == nullptr) return fail(KF_ERR_INPUT, "null complex");
  return guarded([&] {
    return emit(knotfilt::io::validate_complex_report(complex->data), complex_inputs(complex), out_json);
  });
}

kf_status kf_hfk_grid(const kf_grid* grid, const kf_options* options, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (grid == nullptr) return fail(KF_ERR_INPUT, "null grid");
  return guarded([&] {
    return emit(knotfilt::io::hfk_report(grid->diagram, grid_options(options)), grid_inputs(grid), out_json);
  });
}

kf_status kf_hfk_complex(const kf_complex* complex, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (complex == nullptr) return fail(KF_ERR_INPUT, "null complex");
  return guarded([&] { return emit(knotfilt::io::hfk_report(complex->data), complex_inputs(complex), out_json); });
}

kf_status kf_tau_grid(const kf_grid* grid, const char* class_name, const kf_options* options, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (grid == nullptr) return fail(KF_ERR_INPUT, "null grid");
  return guarded([&] {
    require_top(class_name);
    return emit(knotfilt::io::tau_report(grid->diagram, grid_options(options)), grid_inputs(grid), out_json);
  });
}

kf_status kf_tau_complex(const kf_complex* complex, const char* class_name, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (complex == nullptr) return fail(KF_ERR_INPUT, "null complex");
  return guarded([&] {
    require_top(class_name);
    return emit(knotfilt::io::tau_report(complex->data), complex_inputs(complex), out_json);
  });
}

kf_status kf_mirror_check(const kf_grid* grid, const kf_options* options, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (grid == nullptr) return fail(KF_ERR_INPUT, "null grid");
  return guarded([&] {
    return emit(knotfilt::io::mirror_check_report(grid->diagram, grid_options(options)), grid_inputs(grid),
                out_json);
  });
}

kf_status kf_connect_sum(const kf_complex* a, const kf_complex* b, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (a == nullptr || b == nullptr) return fail(KF_ERR_INPUT, "null complex");
  return guarded([&] {
    json inputs = json::array({complex_inputs(a), complex_inputs(b)});
    return emit(knotfilt::io::connect_sum_report(a->data, b->data), inputs, out_json);
  });
}

kf_status kf_surgery_check(const kf_complex* complex, int has_m, int m, const char* class_name,
                           char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (complex == nullptr) return fail(KF_ERR_INPUT, "null complex");
  return guarded([&] {
    require_top(class_name);
    std::optional<int> level;
    if (has_m) level = m;
    return emit(knotfilt::io::surgery_check_report(complex->data, level), complex_inputs(complex), out_json);
  });
}

kf_status kf_bennequin(int tb, int rot, int tau, const int* genus, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  return guarded([&] {
    knotfilt::contact::LegendrianData l{tb, rot, {}};
    if (genus != nullptr) l.genus = *genus;
    std::string key = std::to_string(tb) + " " + std::to_string(rot) + " " + std::to_string(tau) + " " +
                      (genus ? std::to_string(*genus) : std::string("-"));
    return emit(knotfilt::io::bennequin_report(l, tau), number_inputs(key), out_json);
  });
}

kf_status kf_cable_bound(long long p, long long q, long long genus, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  return guarded([&] {
    std::string key = std::to_string(p) + " " + std::to_string(q) + " " + std::to_string(genus);
    return emit(knotfilt::io::cable_bound_report(p, q, genus), number_inputs(key), out_json);
  });
}

kf_status kf_cable_min_q(long long n, long long p, long long genus, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  return guarded([&] {
    std::string key = "N " + std::to_string(n) + " " + std::to_string(p) + " " + std::to_string(genus);
    return emit(knotfilt::io::cable_min_report(n, p, genus), number_inputs(key), out_json);
  });
}

kf_status kf_fibered(const int* tb, const int* rot, size_t count, int genus, char** out_json) {
  if (auto s = check_out(out_json); s != KF_OK) return s;
  if (count > 0 && (tb == nullptr || rot == nullptr)) return fail(KF_ERR_INPUT, "null tb/rot arrays");
  return guarded([&] {
    std::vector<knotfilt::contact::LegendrianData> structures;
    std::string key = std::to_string(genus);
    for (size_t k = 0; k < count; ++k) {
      structures.push_back({tb[k], rot[k], {}});
      key += " " + std::to_string(tb[k]) + "," + std::to_string(rot[k]);
    }
    return emit(knotfilt::io::fibered_report(structures, genus), number_inputs(key), out_json);
  });
}

}  // extern "C"
