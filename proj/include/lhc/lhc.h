/* Public C interface to the hypergraph coloring library.
 *
 * Conventions:
 *   - Handles are opaque; free them with the matching *_free function.
 *   - Structured inputs and outputs travel as JSON strings. Returned strings
 *     are heap-allocated; release them with lhc_string_free.
 *   - Every function returns an lhc_status. On any non-OK status,
 *     lhc_last_error() describes the failure (thread-local storage).
 */
#ifndef LHC_LHC_H
#define LHC_LHC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lhc_status {
    LHC_OK = 0,
    LHC_ERR_VALIDATION = 1, /* malformed input (JSON shape, bad hypergraph, ...) */
    LHC_ERR_DOMAIN = 2,     /* argument outside its legal range */
    LHC_ERR_TOO_LARGE = 3,  /* instance exceeds a hard resource bound */
    LHC_ERR_GENERATION = 4, /* generator could not satisfy its constraints */
    LHC_ERR_INTERNAL = 5    /* invariant breakage or unexpected failure */
} lhc_status;

typedef struct lhc_hypergraph lhc_hypergraph;

/* Message for the most recent failure on this thread; never NULL. */
const char* lhc_last_error(void);

void lhc_string_free(char* s);
void lhc_hypergraph_free(lhc_hypergraph* h);

/* Parse {"n_vertices": N, "delta": D, "edges": [[...], ...]}. */
lhc_status lhc_hypergraph_from_json(const char* json_text, lhc_hypergraph** out);
lhc_status lhc_hypergraph_to_json(const lhc_hypergraph* h, char** out_json);

/* Generate an instance from
 *   {"family": "uniform_random" | "bounded_degree" | "path_chain" | "grid" |
 *              "adversarial_biased",
 *    "n": N, "delta": D, "seed": S, "max_degree": M?}                       */
lhc_status lhc_generate(const char* spec_json, lhc_hypergraph** out);

/* Execute the full protocol. Config (all fields optional unless noted):
 *   {"alpha": 0.125, "dangerous_frac": -1, "u": 3, "beta": 0,
 *    "num_epochs": 0, "exhaustive_cap": 20, "include_traces": false,
 *    "seed": 1                  -- ignored when "colorings" is given
 *    "colorings": {...}}        -- explicit coloring-sequence object
 * Result JSON carries outcome, coloring, phase/round accounting, the
 * skeleton series, and traces when requested.                              */
lhc_status lhc_run(const lhc_hypergraph* h, const char* config_json, char** out_json);

/* Experiments. Config:
 *   {"experiment": "success-rate" | "claim" | "shrinkage",
 *    "trials": T (required), "seed": S, "ell_max": 3,
 *    ...algorithm fields as for lhc_run}                                    */
lhc_status lhc_experiment(const lhc_hypergraph* h, const char* config_json, char** out_json);

/* Search for one coloring sequence driving every universe instance to
 * success. Config: {"budget": B (required), "seed": S, ...algorithm fields}. */
lhc_status lhc_search_colorings(const lhc_hypergraph* const* universe, size_t count,
                                const char* config_json, char** out_json);

/* Ground-truth 2-colorability scan (at most 24 vertices). */
lhc_status lhc_oracle_bichromatic(const lhc_hypergraph* h, char** out_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LHC_LHC_H */
