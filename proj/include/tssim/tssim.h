/* C interface to the tssim library.
 *
 * Objects are opaque handles created by *_parse / *_create style calls and
 * released with the matching *_free. Every fallible call returns a
 * tssim_status; on failure tssim_last_error() describes the problem (the
 * message is thread local and valid until the next failing call on the same
 * thread). Strings returned through char** are heap allocated and must be
 * released with tssim_string_free.
 */
#ifndef TSSIM_H
#define TSSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(TSSIM_BUILDING_LIBRARY)
#define TSSIM_API __attribute__((visibility("default")))
#else
#define TSSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tssim_status {
  TSSIM_OK = 0,
  TSSIM_ERR_PARSE = 2,    /* malformed input text */
  TSSIM_ERR_CONTRACT = 3, /* bad arguments, shapes, domain or size limits */
  TSSIM_ERR_NUMERIC = 4,  /* iteration failure or degenerate numerics */
  TSSIM_ERR_INTERNAL = 5
} tssim_status;

typedef struct tssim_pauli_sum tssim_pauli_sum;
typedef struct tssim_matrix tssim_matrix;
typedef struct tssim_decomposition tssim_decomposition;

TSSIM_API const char* tssim_version(void);
TSSIM_API const char* tssim_last_error(void);
TSSIM_API void tssim_string_free(char* s);

/* Cap on any dense matrix dimension (default 16384). */
TSSIM_API tssim_status tssim_set_max_dim(size_t dim);
TSSIM_API size_t tssim_max_dim(void);

/* Pauli sums: "<coefficient> <word>" per line, '#' comments. */
TSSIM_API tssim_status tssim_pauli_sum_parse(const char* text, tssim_pauli_sum** out);
TSSIM_API tssim_status tssim_pauli_sum_h2(tssim_pauli_sum** out);
TSSIM_API void tssim_pauli_sum_free(tssim_pauli_sum* s);
TSSIM_API size_t tssim_pauli_sum_num_qubits(const tssim_pauli_sum* s);
TSSIM_API size_t tssim_pauli_sum_num_terms(const tssim_pauli_sum* s);
TSSIM_API tssim_status tssim_pauli_sum_to_matrix(const tssim_pauli_sum* s, tssim_matrix** out);

/* Dense matrices: {"dim": N, "entries": [[re, im], ...]} or {"dim": N, "real": [...]}. */
TSSIM_API tssim_status tssim_matrix_parse_json(const char* text, tssim_matrix** out);
TSSIM_API void tssim_matrix_free(tssim_matrix* m);
TSSIM_API size_t tssim_matrix_dim(const tssim_matrix* m);
TSSIM_API tssim_status tssim_matrix_get(const tssim_matrix* m, size_t row, size_t col, double* re, double* im);
TSSIM_API tssim_status tssim_matrix_to_json(const tssim_matrix* m, char** out);
/* Lowest eigenvalue of a Hermitian matrix. */
TSSIM_API tssim_status tssim_matrix_lowest_eigenvalue(const tssim_matrix* m, double* out);

/* Divide-and-conquer decomposition. */
TSSIM_API tssim_status tssim_decompose(const tssim_matrix* m, double prune_tol, tssim_decomposition** out);
TSSIM_API void tssim_decomposition_free(tssim_decomposition* d);
TSSIM_API size_t tssim_decomposition_num_terms(const tssim_decomposition* d);
TSSIM_API size_t tssim_decomposition_num_groups(const tssim_decomposition* d);
TSSIM_API tssim_status tssim_decomposition_to_json(const tssim_decomposition* d, char** out);
TSSIM_API tssim_status tssim_decomposition_from_json(const char* text, tssim_decomposition** out);
TSSIM_API tssim_status tssim_decomposition_reconstruct(const tssim_decomposition* d, tssim_matrix** out);
/* max |reconstruct(d) - m|. */
TSSIM_API tssim_status tssim_decomposition_residual(const tssim_decomposition* d, const tssim_matrix* m,
                                                    double* out);

/* Block encodings, reported as JSON (dimensions, scale, block error).
 * Pauli methods: "select" (U_H), "taylor" (U(t) around U_H), "exact" (dilation of tH).
 * Matrix methods: "exact" (dilation of tH), "dc" (U_H from the decomposition),
 * "taylor" (U(t) around the dilation). Matrices are normalized first. */
TSSIM_API tssim_status tssim_encode_pauli(const tssim_pauli_sum* s, const char* method, double t, char** out);
TSSIM_API tssim_status tssim_encode_matrix(const tssim_matrix* m, const char* method, double t, char** out);

typedef enum tssim_method { TSSIM_METHOD_EXACT = 0, TSSIM_METHOD_TAYLOR = 1, TSSIM_METHOD_DC = 2 } tssim_method;

typedef struct tssim_estimate_options {
  tssim_method method;
  double t;
  unsigned bits;      /* 1..48 */
  int iterative;      /* nonzero: MSB-first IPEA instead of textbook PEA */
  int correct;        /* taylor truncation correction on/off */
  int sample;         /* IPEA: Bernoulli draws instead of exact probabilities */
  uint64_t seed;
  size_t trials;      /* IPEA sampling draws per bit */
  double prune_tol;   /* dc method */
} tssim_estimate_options;

TSSIM_API tssim_estimate_options tssim_estimate_options_default(void);
TSSIM_API tssim_status tssim_estimate_pauli(const tssim_pauli_sum* s, const tssim_estimate_options* opts,
                                            char** out);
TSSIM_API tssim_status tssim_estimate_matrix(const tssim_matrix* m, const tssim_estimate_options* opts,
                                             char** out);

/* Gate-count reports as JSON. */
TSSIM_API tssim_status tssim_gates_select(const tssim_pauli_sum* s, unsigned extra_controls, char** out);
TSSIM_API tssim_status tssim_gates_dense(size_t n, char** out);
TSSIM_API tssim_status tssim_gates_dc(const tssim_decomposition* d, int pea_control, char** out);

/* |P(0) - P(1)| histogram over uniform eigenphases. */
TSSIM_API tssim_status tssim_histogram(size_t ensemble, size_t iterations, uint64_t seed, char** out);

#ifdef __cplusplus
}
#endif

#endif /* TSSIM_H */
