#ifndef LIFELOGIC_H
#define LIFELOGIC_H

/* C interface to the lifelogic library.
 *
 * Every function returns an ll_status. On failure, ll_last_error() describes
 * the problem for the calling thread until its next failing call. Objects are
 * opaque and released with the matching *_free function; passing NULL to a
 * free function is a no-op. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LL_API __declspec(dllexport)
#else
#define LL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ll_status {
  LL_OK = 0,
  LL_ERR_ARGUMENT = 1,    /* null pointer, out-of-range value */
  LL_ERR_PARSE = 2,       /* RLE or expression syntax, unknown pattern, bad operand */
  LL_ERR_SEMANTIC = 3,    /* missing variable, placement conflict */
  LL_ERR_CALIBRATION = 4, /* no valid gate placement */
  LL_ERR_IO = 5,          /* unreadable or unwritable file */
  LL_ERR_INTERNAL = 6
} ll_status;

/* Position details of the last parse failure: RLE line/column, or the 1-based
 * column of an expression error (line is 1). Zero when not applicable. */
LL_API const char* ll_last_error(void);
LL_API void ll_last_error_position(int* line, int* column);

/* ---- universes ---------------------------------------------------------- */

typedef struct ll_universe ll_universe;

typedef struct ll_box {
  int32_t min_x, min_y, max_x, max_y;
} ll_box;

typedef struct ll_glider {
  int32_t x, y; /* top-left of the 3x3 box */
  int phase;    /* 0..3 */
  int heading;  /* 0 SE, 1 SW, 2 NE, 3 NW */
} ll_glider;

LL_API ll_status ll_universe_new(ll_universe** out);
/* Catalog name (e.g. "gun_p30") or path to an .rle file. */
LL_API ll_status ll_universe_load(const char* name_or_path, ll_universe** out);
LL_API ll_status ll_universe_from_rle(const char* text, ll_universe** out);
LL_API void ll_universe_free(ll_universe* u);

LL_API ll_status ll_universe_set(ll_universe* u, int32_t x, int32_t y, int alive);
LL_API ll_status ll_universe_alive(const ll_universe* u, int32_t x, int32_t y, int* alive);
LL_API ll_status ll_universe_step(ll_universe* u, int64_t generations);
LL_API ll_status ll_universe_generation(const ll_universe* u, int64_t* generation);
LL_API ll_status ll_universe_population(const ll_universe* u, uint64_t* population);
/* *has_cells is 0 for an empty universe, and *box is left untouched. */
LL_API ll_status ll_universe_bbox(const ll_universe* u, ll_box* box, int* has_cells);

/* Buffer protocol: *count receives the number of items available; at most
 * `capacity` are written. Call with capacity 0 to size the buffer. */
LL_API ll_status ll_universe_cells(const ll_universe* u, int32_t* xy, size_t capacity, size_t* count);
LL_API ll_status ll_universe_gliders(const ll_universe* u, ll_glider* out, size_t capacity, size_t* count);
/* Same protocol, counted in bytes including the terminating NUL. */
LL_API ll_status ll_universe_to_rle(const ll_universe* u, char* buf, size_t capacity, size_t* size);

/* *found is 0 when nothing recurs within max_generations. */
LL_API ll_status ll_universe_stabilization(const ll_universe* u, int64_t max_generations, int max_period,
                                           int* found, int64_t* stabilized_at, int* period);

/* ---- circuits ------------------------------------------------------------ */

typedef struct ll_circuit ll_circuit;

typedef enum ll_xor_form {
  LL_XOR_CONJUNCTIVE = 0, /* (x | y) & !(x & y) */
  LL_XOR_DISJUNCTIVE = 1  /* (x & !y) | (!x & y) */
} ll_xor_form;

LL_API ll_status ll_circuit_compile(const char* expression, ll_xor_form form, ll_circuit** out);
LL_API void ll_circuit_free(ll_circuit* c);

LL_API ll_status ll_circuit_variable_count(const ll_circuit* c, size_t* count);
/* Sorted variable names; the pointer stays valid while the circuit lives. */
LL_API ll_status ll_circuit_variable(const ll_circuit* c, size_t index, const char** name);
LL_API ll_status ll_circuit_probe_generation(const ll_circuit* c, int64_t* generation);
LL_API ll_status ll_circuit_probe_window(const ll_circuit* c, int* window);
LL_API ll_status ll_circuit_gun_count(const ll_circuit* c, int* guns);
LL_API ll_status ll_circuit_output_cell(const ll_circuit* c, int32_t* x, int32_t* y);

/* values[i] (0 or 1) is the value of names[i]. */
LL_API ll_status ll_circuit_evaluate(const ll_circuit* c, const char* const* names, const int* values, size_t n,
                                     int* result);
/* Generation-0 universe with the assignment's inputs applied. */
LL_API ll_status ll_circuit_prepare(const ll_circuit* c, const char* const* names, const int* values, size_t n,
                                    ll_universe** out);

/* ---- adder ------------------------------------------------------------------ */

/* x, y in 0..3; *sum is b2 b1 b0 from one shared simulation. */
LL_API ll_status ll_adder_add(unsigned x, unsigned y, unsigned* sum);

/* ---- gate calibration --------------------------------------------------------- */

typedef struct ll_certificate {
  int rows;             /* 2 for NOT, 4 otherwise */
  unsigned inputs[4];   /* bit i = input slot i */
  int output[4];
  int expected[4];
  int clean[4];
  int64_t probe_generation;
} ll_certificate;

/* gate is "AND", "OR" or "NOT". `width` values are searched per geometry
 * parameter; 0 gives an empty search. Fixture files go to out_dir. */
LL_API ll_status ll_gate_calibrate(const char* gate, int width, const char* out_dir, ll_certificate* cert);

#ifdef __cplusplus
}
#endif

#endif
