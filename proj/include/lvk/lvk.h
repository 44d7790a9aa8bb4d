/* C interface to the long virtual knot library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an lvk_status; on
 * failure lvk_last_error() describes the problem (per thread, valid until
 * the next failing call on that thread). Strings returned through char**
 * are heap-allocated and released with lvk_string_free. */
#ifndef LVK_LVK_H
#define LVK_LVK_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LVK_BUILDING_LIBRARY)
#    define LVK_API __declspec(dllexport)
#  else
#    define LVK_API __declspec(dllimport)
#  endif
#else
#  define LVK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lvk_status {
  LVK_OK = 0,
  LVK_ERR_MALFORMED_TOKEN = 1,
  LVK_ERR_LABEL_ARITY = 2,
  LVK_ERR_ROLE_CLASH = 3,
  LVK_ERR_UNKNOWN_LABEL = 4,
  LVK_ERR_ILLEGAL_MOVE = 5,
  LVK_ERR_NOT_A_CUT_POINT = 6,
  LVK_ERR_INVALID_STRUCTURE = 7,
  LVK_ERR_INVALID_TRAVERSAL = 8,
  LVK_ERR_NON_INTEGRAL_GENUS = 9,
  LVK_ERR_INVALID_BUDGET = 10,
  LVK_ERR_INVALID_ARGUMENT = 11,
  LVK_ERR_IO = 12,
  LVK_ERR_INTERNAL = 99
} lvk_status;

typedef struct lvk_diagram lvk_diagram;
typedef struct lvk_structure lvk_structure;
typedef struct lvk_catalog lvk_catalog;

typedef struct lvk_budget {
  uint64_t max_crossings;
  uint64_t max_states;
  uint64_t max_depth;
} lvk_budget;

typedef struct lvk_genus_info {
  int chi;
  int boundary_total;
  int boundary_distinguished;
  int genus;
} lvk_genus_info;

LVK_API const char* lvk_status_name(lvk_status status);
LVK_API const char* lvk_last_error(void);
LVK_API const char* lvk_version(void);
LVK_API void lvk_string_free(char* s);

/* Diagrams */
LVK_API lvk_status lvk_diagram_parse(const char* code, lvk_diagram** out);
LVK_API lvk_status lvk_diagram_clone(const lvk_diagram* d, lvk_diagram** out);
LVK_API void lvk_diagram_free(lvk_diagram* d);
LVK_API lvk_status lvk_diagram_serialize(const lvk_diagram* d, char** out);
LVK_API size_t lvk_diagram_crossings(const lvk_diagram* d);
LVK_API lvk_status lvk_diagram_canonicalize(const lvk_diagram* d, lvk_diagram** out);
LVK_API lvk_status lvk_diagram_mirror(const lvk_diagram* d, lvk_diagram** out);
LVK_API lvk_status lvk_diagram_linked(const lvk_diagram* d, uint32_t a, uint32_t b, int* out);
LVK_API lvk_status lvk_diagram_fingerprint(const lvk_diagram* d, char** out);

/* Monoid */
LVK_API lvk_status lvk_concat(const lvk_diagram* a, const lvk_diagram* b, lvk_diagram** out);
/* Writes up to `cap` gaps; *count receives the total number of cut points. */
LVK_API lvk_status lvk_cut_points(const lvk_diagram* d, size_t* gaps, size_t cap, size_t* count);
LVK_API lvk_status lvk_split_at(const lvk_diagram* d, size_t gap, lvk_diagram** left, lvk_diagram** right);
LVK_API lvk_status lvk_is_decomposable(const lvk_diagram* d, int* out);

/* Moves: JSON array of {kind, ..., result} for every single move within cap. */
LVK_API lvk_status lvk_moves_json(const lvk_diagram* d, uint64_t cap, char** out_json);

/* Surface */
LVK_API lvk_status lvk_genus(const lvk_diagram* d, lvk_genus_info* out);

/* Invariants */
LVK_API lvk_status lvk_odd_writhe(const lvk_diagram* d, int* out);
/* "dihedral:M", "trivial:M", "biquandle:M#K" or "file:PATH". */
LVK_API lvk_status lvk_structure_from_spec(const char* spec, lvk_structure** out);
/* Structure text format; returns LVK_ERR_INVALID_STRUCTURE with the first
 * violated axiom in lvk_last_error() when the axioms fail. */
LVK_API lvk_status lvk_structure_from_text(const char* text, lvk_structure** out);
LVK_API void lvk_structure_free(lvk_structure* s);
LVK_API size_t lvk_structure_order(const lvk_structure* s);
LVK_API const char* lvk_structure_name(const lvk_structure* s);
/* Writes the order*order matrix row-major into `entries` (capacity `cap`). */
LVK_API lvk_status lvk_coloring_matrix(const lvk_diagram* d, const lvk_structure* s, uint64_t* entries, size_t cap);
/* *found = 1 and the witness fields are set when M(A)M(B) != M(B)M(A). */
LVK_API lvk_status lvk_commutator_witness(const lvk_diagram* a, const lvk_diagram* b, const lvk_structure* s,
                                          int* found, size_t* row, size_t* col, uint64_t* lhs, uint64_t* rhs);
LVK_API lvk_status lvk_invariants_json(const lvk_diagram* d, const lvk_catalog* structures, char** out_json);

/* Structure catalogs */
LVK_API lvk_status lvk_catalog_new(lvk_catalog** out);
LVK_API lvk_status lvk_catalog_default(lvk_catalog** out);
/* Every enumerated biquandle of order 2..max_order (max_order <= 5). */
LVK_API lvk_status lvk_catalog_enumerated(size_t max_order, lvk_catalog** out);
LVK_API lvk_status lvk_catalog_add(lvk_catalog* c, const lvk_structure* s);
LVK_API size_t lvk_catalog_size(const lvk_catalog* c);
LVK_API void lvk_catalog_free(lvk_catalog* c);

/* Search. A NULL budget selects the default for the inputs. */
LVK_API lvk_status lvk_budget_default(const lvk_diagram* a, const lvk_diagram* b, lvk_budget* out);
LVK_API lvk_status lvk_equivalent_json(const lvk_diagram* a, const lvk_diagram* b, const lvk_budget* budget,
                                       char** out_json);
/* A NULL catalog selects the default catalog. */
LVK_API lvk_status lvk_commute_json(const lvk_diagram* a, const lvk_diagram* b, const lvk_budget* budget,
                                    const lvk_catalog* catalog, char** out_json);
LVK_API lvk_status lvk_prime_scan_json(const lvk_diagram* d, const lvk_budget* budget, char** out_json);
LVK_API lvk_status lvk_min_genus_json(const lvk_diagram* d, const lvk_budget* budget, char** out_json);
LVK_API lvk_status lvk_genus_json(const lvk_diagram* d, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* LVK_LVK_H */
