// extern "C" surface over the C++ core. Every entry point converts
// exceptions into status codes; nothing throws across the boundary.

#include "lvk/lvk.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "lvk/error.hpp"
#include "lvk/gauss.hpp"
#include "lvk/invariants.hpp"
#include "lvk/monoid.hpp"
#include "lvk/moves.hpp"
#include "lvk/report.hpp"
#include "lvk/search.hpp"
#include "lvk/surface.hpp"

struct lvk_diagram {
  lvk::GaussDiagram value;
};

struct lvk_structure {
  lvk::FiniteBiquandle value;
};

struct lvk_catalog {
  std::vector<lvk::FiniteBiquandle> items;
};

namespace {

thread_local std::string last_error;

lvk_status map_code(lvk::ErrorCode c) {
  switch (c) {
    case lvk::ErrorCode::MalformedToken: return LVK_ERR_MALFORMED_TOKEN;
    case lvk::ErrorCode::LabelArity: return LVK_ERR_LABEL_ARITY;
    case lvk::ErrorCode::RoleClash: return LVK_ERR_ROLE_CLASH;
    case lvk::ErrorCode::UnknownLabel: return LVK_ERR_UNKNOWN_LABEL;
    case lvk::ErrorCode::IllegalMove: return LVK_ERR_ILLEGAL_MOVE;
    case lvk::ErrorCode::NotACutPoint: return LVK_ERR_NOT_A_CUT_POINT;
    case lvk::ErrorCode::InvalidStructure: return LVK_ERR_INVALID_STRUCTURE;
    case lvk::ErrorCode::InvalidTraversal: return LVK_ERR_INVALID_TRAVERSAL;
    case lvk::ErrorCode::NonIntegralGenus: return LVK_ERR_NON_INTEGRAL_GENUS;
    case lvk::ErrorCode::InvalidBudget: return LVK_ERR_INVALID_BUDGET;
    case lvk::ErrorCode::InvalidArgument: return LVK_ERR_INVALID_ARGUMENT;
    case lvk::ErrorCode::Io: return LVK_ERR_IO;
  }
  return LVK_ERR_INTERNAL;
}

template <typename F>
lvk_status guarded(F&& f) {
  try {
    f();
    return LVK_OK;
  } catch (const lvk::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LVK_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LVK_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw lvk::Error(lvk::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lvk_diagram* wrap(lvk::GaussDiagram d) { return new lvk_diagram{std::move(d)}; }

lvk::Budget to_budget(const lvk_budget* b, const lvk::GaussDiagram& x, const lvk::GaussDiagram& y) {
  if (b == nullptr) return lvk::default_budget(x, y);
  lvk::Budget out{static_cast<std::size_t>(b->max_crossings), static_cast<std::size_t>(b->max_states),
                  static_cast<std::size_t>(b->max_depth)};
  lvk::validate(out);
  return out;
}

}  // namespace

extern "C" {

const char* lvk_status_name(lvk_status status) {
  switch (status) {
    case LVK_OK: return "ok";
    case LVK_ERR_MALFORMED_TOKEN: return "MalformedToken";
    case LVK_ERR_LABEL_ARITY: return "LabelArity";
    case LVK_ERR_ROLE_CLASH: return "RoleClash";
    case LVK_ERR_UNKNOWN_LABEL: return "UnknownLabel";
    case LVK_ERR_ILLEGAL_MOVE: return "IllegalMove";
    case LVK_ERR_NOT_A_CUT_POINT: return "NotACutPoint";
    case LVK_ERR_INVALID_STRUCTURE: return "InvalidStructure";
    case LVK_ERR_INVALID_TRAVERSAL: return "InvalidTraversal";
    case LVK_ERR_NON_INTEGRAL_GENUS: return "NonIntegralGenus";
    case LVK_ERR_INVALID_BUDGET: return "InvalidBudget";
    case LVK_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case LVK_ERR_IO: return "Io";
    case LVK_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* lvk_last_error(void) { return last_error.c_str(); }

const char* lvk_version(void) { return "1.0.0"; }

void lvk_string_free(char* s) { std::free(s); }

lvk_status lvk_diagram_parse(const char* code, lvk_diagram** out) {
  return guarded([&] {
    require(code, "code");
    require(out, "out");
    *out = wrap(lvk::parse_gauss_code(code));
  });
}

lvk_status lvk_diagram_clone(const lvk_diagram* d, lvk_diagram** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = wrap(d->value);
  });
}

void lvk_diagram_free(lvk_diagram* d) { delete d; }

lvk_status lvk_diagram_serialize(const lvk_diagram* d, char** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = dup_string(lvk::serialize(d->value));
  });
}

size_t lvk_diagram_crossings(const lvk_diagram* d) { return d ? d->value.crossings() : 0; }

lvk_status lvk_diagram_canonicalize(const lvk_diagram* d, lvk_diagram** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = wrap(lvk::canonicalize(d->value));
  });
}

lvk_status lvk_diagram_mirror(const lvk_diagram* d, lvk_diagram** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = wrap(lvk::mirror(d->value));
  });
}

lvk_status lvk_diagram_linked(const lvk_diagram* d, uint32_t a, uint32_t b, int* out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = lvk::linked(d->value, a, b) ? 1 : 0;
  });
}

lvk_status lvk_diagram_fingerprint(const lvk_diagram* d, char** out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = dup_string(lvk::fingerprint(d->value));
  });
}

lvk_status lvk_concat(const lvk_diagram* a, const lvk_diagram* b, lvk_diagram** out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    *out = wrap(lvk::concat(a->value, b->value));
  });
}

lvk_status lvk_cut_points(const lvk_diagram* d, size_t* gaps, size_t cap, size_t* count) {
  return guarded([&] {
    require(d, "diagram");
    require(count, "count");
    const auto cuts = lvk::cut_points(d->value);
    *count = cuts.size();
    if (cap > 0) require(gaps, "gaps");
    for (std::size_t i = 0; i < cuts.size() && i < cap; ++i) gaps[i] = cuts[i].gap;
  });
}

lvk_status lvk_split_at(const lvk_diagram* d, size_t gap, lvk_diagram** left, lvk_diagram** right) {
  return guarded([&] {
    require(d, "diagram");
    require(left, "left");
    require(right, "right");
    auto [l, r] = lvk::split_at(d->value, lvk::CutPoint{gap});
    *left = wrap(std::move(l));
    *right = wrap(std::move(r));
  });
}

lvk_status lvk_is_decomposable(const lvk_diagram* d, int* out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = lvk::is_diagram_decomposable(d->value) ? 1 : 0;
  });
}

lvk_status lvk_moves_json(const lvk_diagram* d, uint64_t cap, char** out_json) {
  return guarded([&] {
    require(d, "diagram");
    require(out_json, "out_json");
    auto arr = lvk::report::json::array();
    for (const auto& r : lvk::enumerate_moves(d->value, static_cast<std::size_t>(cap))) {
      auto j = lvk::report::move_json(r.event);
      j["result"] = lvk::serialize(r.result);
      arr.push_back(std::move(j));
    }
    *out_json = dup_string(arr.dump());
  });
}

lvk_status lvk_genus(const lvk_diagram* d, lvk_genus_info* out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    const auto rg = lvk::build_band_surface(d->value);
    const auto bc = lvk::boundary_components(rg);
    *out = lvk_genus_info{lvk::euler_characteristic(rg), bc.total, bc.distinguished, lvk::supporting_genus(d->value)};
  });
}

lvk_status lvk_genus_json(const lvk_diagram* d, char** out_json) {
  return guarded([&] {
    require(d, "diagram");
    require(out_json, "out_json");
    *out_json = dup_string(lvk::report::genus_json(d->value).dump());
  });
}

lvk_status lvk_odd_writhe(const lvk_diagram* d, int* out) {
  return guarded([&] {
    require(d, "diagram");
    require(out, "out");
    *out = lvk::odd_writhe(d->value);
  });
}

lvk_status lvk_structure_from_spec(const char* spec, lvk_structure** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new lvk_structure{lvk::parse_structure_spec(spec)};
  });
}

lvk_status lvk_structure_from_text(const char* text, lvk_structure** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    auto x = lvk::parse_structure_text(text, "text");
    if (!x.valid()) {
      const auto& v = x.violations().front();
      throw lvk::Error(lvk::ErrorCode::InvalidStructure, "axiom " + v.axiom + " fails at (" + std::to_string(v.x) + ", " +
                                                             std::to_string(v.y) + ", " + std::to_string(v.z) + ")");
    }
    *out = new lvk_structure{std::move(x)};
  });
}

void lvk_structure_free(lvk_structure* s) { delete s; }

size_t lvk_structure_order(const lvk_structure* s) { return s ? s->value.order() : 0; }

const char* lvk_structure_name(const lvk_structure* s) { return s ? s->value.name().c_str() : ""; }

lvk_status lvk_coloring_matrix(const lvk_diagram* d, const lvk_structure* s, uint64_t* entries, size_t cap) {
  return guarded([&] {
    require(d, "diagram");
    require(s, "structure");
    require(entries, "entries");
    const std::size_t m = s->value.order();
    if (cap < m * m) throw lvk::Error(lvk::ErrorCode::InvalidArgument, "entries buffer smaller than order^2");
    const auto mat = lvk::coloring_matrix(d->value, s->value);
    std::copy(mat.entries().begin(), mat.entries().end(), entries);
  });
}

lvk_status lvk_commutator_witness(const lvk_diagram* a, const lvk_diagram* b, const lvk_structure* s, int* found,
                                  size_t* row, size_t* col, uint64_t* lhs, uint64_t* rhs) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(s, "structure");
    require(found, "found");
    const auto w = lvk::commutator_witness(a->value, b->value, s->value);
    *found = w ? 1 : 0;
    if (w) {
      if (row) *row = w->a;
      if (col) *col = w->b;
      if (lhs) *lhs = w->lhs;
      if (rhs) *rhs = w->rhs;
    }
  });
}

lvk_status lvk_invariants_json(const lvk_diagram* d, const lvk_catalog* structures, char** out_json) {
  return guarded([&] {
    require(d, "diagram");
    require(out_json, "out_json");
    const auto& items = structures ? structures->items : lvk::default_catalog();
    *out_json = dup_string(lvk::report::invariants_json(d->value, items).dump());
  });
}

lvk_status lvk_catalog_new(lvk_catalog** out) {
  return guarded([&] {
    require(out, "out");
    *out = new lvk_catalog{};
  });
}

lvk_status lvk_catalog_default(lvk_catalog** out) {
  return guarded([&] {
    require(out, "out");
    *out = new lvk_catalog{lvk::default_catalog()};
  });
}

lvk_status lvk_catalog_enumerated(size_t max_order, lvk_catalog** out) {
  return guarded([&] {
    require(out, "out");
    if (max_order > 5) throw lvk::Error(lvk::ErrorCode::InvalidArgument, "structure enumeration is limited to order 5");
    *out = new lvk_catalog{lvk::structure_catalog(max_order)};
  });
}

lvk_status lvk_catalog_add(lvk_catalog* c, const lvk_structure* s) {
  return guarded([&] {
    require(c, "catalog");
    require(s, "structure");
    c->items.push_back(s->value);
  });
}

size_t lvk_catalog_size(const lvk_catalog* c) { return c ? c->items.size() : 0; }

void lvk_catalog_free(lvk_catalog* c) { delete c; }

lvk_status lvk_budget_default(const lvk_diagram* a, const lvk_diagram* b, lvk_budget* out) {
  return guarded([&] {
    require(a, "a");
    require(out, "out");
    const auto bud = b ? lvk::default_budget(a->value, b->value) : lvk::default_budget(a->value);
    *out = lvk_budget{bud.max_crossings, bud.max_states, bud.max_depth};
  });
}

lvk_status lvk_equivalent_json(const lvk_diagram* a, const lvk_diagram* b, const lvk_budget* budget, char** out_json) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out_json, "out_json");
    const auto v = lvk::equivalent_within(a->value, b->value, to_budget(budget, a->value, b->value));
    *out_json = dup_string(lvk::report::verdict_json(v).dump());
  });
}

lvk_status lvk_commute_json(const lvk_diagram* a, const lvk_diagram* b, const lvk_budget* budget,
                            const lvk_catalog* catalog, char** out_json) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out_json, "out_json");
    // The concatenations carry both crossing sets.
    const auto ab = lvk::concat(a->value, b->value);
    const auto bud = to_budget(budget, ab, ab);
    const auto& items = catalog ? catalog->items : lvk::default_catalog();
    const auto v = lvk::commute_check(a->value, b->value, bud, items);
    *out_json = dup_string(lvk::report::verdict_json(v).dump());
  });
}

lvk_status lvk_prime_scan_json(const lvk_diagram* d, const lvk_budget* budget, char** out_json) {
  return guarded([&] {
    require(d, "diagram");
    require(out_json, "out_json");
    const auto r = lvk::prime_scan(d->value, to_budget(budget, d->value, d->value));
    *out_json = dup_string(lvk::report::prime_scan_json(r).dump());
  });
}

lvk_status lvk_min_genus_json(const lvk_diagram* d, const lvk_budget* budget, char** out_json) {
  return guarded([&] {
    require(d, "diagram");
    require(out_json, "out_json");
    const auto bud = to_budget(budget, d->value, d->value);
    const auto g = lvk::min_genus_in_orbit(d->value, bud);
    *out_json = dup_string(lvk::report::min_genus_json(g, bud).dump());
  });
}

}  // extern "C"
