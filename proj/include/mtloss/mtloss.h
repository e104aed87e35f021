/*
 * C interface to the mtloss library.
 *
 * All objects are opaque handles created by a *_create / *_build / *_read
 * function and released by the matching *_destroy. Every fallible call
 * returns an mtl_status; on failure mtl_last_error() describes the problem
 * (thread-local, valid until the next failing call on the same thread).
 * Strings returned through char** out-parameters are owned by the caller and
 * must be released with mtl_string_free.
 */
#ifndef MTLOSS_H
#define MTLOSS_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MTLOSS_BUILDING)
#    define MTL_API __declspec(dllexport)
#  else
#    define MTL_API __declspec(dllimport)
#  endif
#else
#  define MTL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mtl_status {
  MTL_OK = 0,
  MTL_ERR_INVALID_ARGUMENT = 1,
  MTL_ERR_PARSE = 2,
  MTL_ERR_IO = 3,
  MTL_ERR_CONFIG = 4,
  MTL_ERR_NUMERIC = 5,
  MTL_ERR_INTERNAL = 6
} mtl_status;

typedef enum mtl_connectivity { MTL_CHAIN2 = 0, MTL_CONN4 = 1, MTL_CONN8 = 2 } mtl_connectivity;

typedef enum mtl_measure_kind { MTL_MEASURE_ALT = 0, MTL_MEASURE_DYN = 1, MTL_MEASURE_VOL = 2 } mtl_measure_kind;

typedef enum mtl_stop_reason { MTL_STOP_MAX_ITERS = 0, MTL_STOP_PLATEAU = 1 } mtl_stop_reason;

typedef struct mtl_image mtl_image;
typedef struct mtl_tree mtl_tree;
typedef struct mtl_run mtl_run;

MTL_API const char* mtl_version(void);
MTL_API const char* mtl_last_error(void);
MTL_API const char* mtl_status_name(mtl_status status);
MTL_API void mtl_string_free(char* s);

/* --- images --------------------------------------------------------------- */

MTL_API mtl_status mtl_image_create(size_t width, size_t height, mtl_connectivity connectivity, const double* values,
                                    mtl_image** out);
/* ".pgm" files are read as graymaps, anything else as a CSV matrix. */
MTL_API mtl_status mtl_image_read(const char* path, mtl_connectivity connectivity, mtl_image** out);
MTL_API mtl_status mtl_image_write(const mtl_image* image, const char* path);
/* spec_json: {"generator": "four_bumps" | "two_ridges", "noise": .., "seed": .., ...} */
MTL_API mtl_status mtl_image_synthesize(const char* spec_json, mtl_connectivity connectivity, mtl_image** out);
MTL_API size_t mtl_image_width(const mtl_image* image);
MTL_API size_t mtl_image_height(const mtl_image* image);
MTL_API const double* mtl_image_data(const mtl_image* image);
MTL_API void mtl_image_destroy(mtl_image* image);

/* --- max-tree ------------------------------------------------------------- */

MTL_API mtl_status mtl_tree_build(const mtl_image* image, mtl_tree** out);
MTL_API size_t mtl_tree_node_count(const mtl_tree* tree);
MTL_API size_t mtl_tree_pixel_count(const mtl_tree* tree);
MTL_API size_t mtl_tree_leaf_count(const mtl_tree* tree);
/* Copy arrays into caller buffers; len must equal the node (or pixel) count. */
MTL_API mtl_status mtl_tree_parents(const mtl_tree* tree, size_t* out, size_t len);
MTL_API mtl_status mtl_tree_altitudes(const mtl_tree* tree, double* out, size_t len);
MTL_API mtl_status mtl_tree_proper_nodes(const mtl_tree* tree, size_t* out, size_t len);
/* Per-maximum values and saddle nodes, in ascending leaf order; len = leaf count.
   saddles may be NULL. */
MTL_API mtl_status mtl_tree_measure(const mtl_tree* tree, mtl_measure_kind kind, double* values, size_t* saddles,
                                    size_t len);
MTL_API mtl_status mtl_tree_to_json(const mtl_tree* tree, char** out);
MTL_API mtl_status mtl_tree_measures_csv(const mtl_tree* tree, char** out);
MTL_API void mtl_tree_destroy(mtl_tree* tree);

/* --- optimization runs ---------------------------------------------------- */

/* Parses and executes a JSON run configuration, writing every artifact it
   names. snapshot_every_override > 0 replaces outputs.snapshot_every.
   Configuration problems are all reported at once (MTL_ERR_CONFIG, one per
   line in mtl_last_error). */
MTL_API mtl_status mtl_run_execute(const char* config_json, size_t snapshot_every_override, mtl_run** out);
MTL_API size_t mtl_run_iterations(const mtl_run* run);
MTL_API mtl_stop_reason mtl_run_stop_reason(const mtl_run* run);
MTL_API size_t mtl_run_salient_maxima(const mtl_run* run);
MTL_API double mtl_run_final_loss(const mtl_run* run);
MTL_API const mtl_image* mtl_run_result_image(const mtl_run* run);
MTL_API void mtl_run_destroy(mtl_run* run);

#ifdef __cplusplus
}
#endif

#endif /* MTLOSS_H */
