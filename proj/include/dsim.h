/*
 * C API for the four-level diamond-scheme simulator.
 *
 * All functions return dsim_status; on failure dsim_last_error() holds a
 * message describing the offending input (thread-local, valid until the
 * next call on the same thread). Strings returned through char** are heap
 * allocated and must be released with dsim_string_free(). Handles are
 * opaque and must be released with their matching *_free() function.
 */
#ifndef DSIM_H
#define DSIM_H

#ifdef __cplusplus
extern "C" {
#endif

/* Mirrors the CLI exit codes. */
typedef enum dsim_status {
  DSIM_OK = 0,
  DSIM_VERIFY_FAILED = 1,
  DSIM_INVALID_INPUT = 2,
  DSIM_INTEGRITY_FAILURE = 3
} dsim_status;

const char* dsim_last_error(void);
void dsim_string_free(char* s);

/* ---- su(N) generator algebra ------------------------------------------- */

typedef struct dsim_algebra dsim_algebra;

/* Builds the N^2-1 generators and their structure constants. n >= 2. */
dsim_status dsim_algebra_create(int n, dsim_algebra** out);
void dsim_algebra_free(dsim_algebra* a);

int dsim_algebra_dimension(const dsim_algebra* a);
int dsim_algebra_generator_count(const dsim_algebra* a);

/* Copies generator `index` (0-based) into re/im, both n*n row-major. */
dsim_status dsim_algebra_generator(const dsim_algebra* a, int index,
                                   double* re, double* im);

/* Structure constant f_ijk for 1-based indices in any order; 0 for
 * repeated or out-of-range indices. */
double dsim_algebra_structure_constant(const dsim_algebra* a, int i, int j,
                                       int k);

/* Writes the {"n", "generators", "structure_constants"} JSON document. */
dsim_status dsim_algebra_write_json(const dsim_algebra* a, const char* path);

/* ---- decision tree ------------------------------------------------------ */

typedef struct dsim_tree dsim_tree;

/*
 * layer1: 4 branch probabilities. layer2: either one shared distribution
 * (branches = 1, 4 values) or one per branch (branches = 4, 16 values
 * row-major). Vectors are renormalized when their sum is within 2e-2 of 1
 * and rejected otherwise.
 */
dsim_status dsim_tree_create(const double layer1[4], const double* layer2,
                             int branches, dsim_tree** out);

/* Simulates the configured run and builds the tree from the populations at
 * its first two named sample instants. */
dsim_status dsim_tree_from_simulation(const char* config_path,
                                      dsim_tree** out);
void dsim_tree_free(dsim_tree* t);

/* Probability of root -> mid -> leaf; negative on invalid labels. */
double dsim_tree_path_probability(const dsim_tree* t, int mid, int leaf);
/* Probability of ending in `target` summed over intermediates; negative on
 * invalid labels. */
double dsim_tree_return_probability(const dsim_tree* t, int target);

dsim_status dsim_tree_write_json(const dsim_tree* t, const char* path);
dsim_status dsim_tree_write_dot(const dsim_tree* t, const char* path);

/* Four-decimal return-probability table, one line per target. */
dsim_status dsim_tree_report(const dsim_tree* t, char** report);

/* ---- high-level runs (the CLI surfaces) --------------------------------- */

/*
 * Runs the simulation described by the JSON config and writes the
 * trajectory CSV and summary JSON it names. On success *summary_json
 * (optional) receives the summary document.
 */
dsim_status dsim_run_simulate(const char* config_path, char** summary_json);

/* Fault-injection hook: verify with one generator sign deliberately
 * flipped; the run must then report failure. */
#define DSIM_VERIFY_FLIP_GENERATOR_SIGN 1u

/*
 * Self-verification: basis properties for N = 2, 3, 4, the tabulated
 * structure-constant comparison, and the two-picture equivalence run.
 * *report (optional) receives the human-readable report.
 */
dsim_status dsim_run_verify(unsigned flags, char** report);

/* Tree from a simulation config; writes the JSON/DOT files the config
 * names and returns the probability table through *report (optional). */
dsim_status dsim_run_tree(const char* config_path, char** report);

/* Writes the su(N) algebra JSON document to `path`. */
dsim_status dsim_run_dump(int n, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* DSIM_H */
