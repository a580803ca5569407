/* gridex — structural coordinate extraction from table segmentation masks.
 *
 * C API over the C++ core. All structured payloads cross the boundary as
 * JSON strings; masks and extraction results are opaque handles. Strings
 * returned through char** out-parameters are heap-allocated and must be
 * released with gx_string_free. On any failure the per-thread message
 * from gx_last_error() describes the cause.
 */
#ifndef GRIDEX_H
#define GRIDEX_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gx_status {
    GX_OK = 0,
    GX_ERR_IO = 1,      /* unreadable file, undecodable raster */
    GX_ERR_DOMAIN = 2,  /* empty signal, undefined metric */
    GX_ERR_INVALID = 3, /* bad argument or malformed JSON */
    GX_ERR_INTERNAL = 4
} gx_status;

typedef struct gx_mask gx_mask;
typedef struct gx_result gx_result;

const char* gx_version(void);
const char* gx_last_error(void);
void gx_string_free(char* s);

/* ---- masks ---- */

/* PNG or PGM (P5); cell = 1 iff intensity >= binarize_threshold. */
gx_status gx_mask_load(const char* path, int binarize_threshold, gx_mask** out);
gx_status gx_mask_from_bytes(const uint8_t* data, size_t len, int binarize_threshold,
                             gx_mask** out);
/* Raw binary pixels, row-major, nonzero = 1. */
gx_status gx_mask_from_pixels(const uint8_t* pixels, int width, int height, gx_mask** out);
gx_status gx_mask_save_pgm(const gx_mask* mask, const char* path);
gx_status gx_mask_transpose(const gx_mask* mask, gx_mask** out);
int gx_mask_width(const gx_mask* mask);
int gx_mask_height(const gx_mask* mask);
void gx_mask_free(gx_mask* mask);

/* ---- extraction pipeline ---- */

/* config_json may be NULL or "{}" for defaults. */
gx_status gx_extract(const gx_mask* mask, const char* config_json, gx_result** out);
gx_status gx_result_boundaries_json(const gx_result* result, char** json_out);
/* One CSV per pipeline stage plus summary.json, written into dir. */
gx_status gx_result_write_trace(const gx_result* result, const char* dir);
int gx_result_peak_count(const gx_result* result);
void gx_result_free(gx_result* result);

/* ---- synthetic generation ---- */

gx_status gx_synth_mask(const char* grid_json, const char* noise_json, gx_mask** mask_out,
                        char** truth_json_out);
/* Discretized mixture plus optional additive noise, emitted as
 * "bin,value" CSV. noise_json may be NULL. */
gx_status gx_synth_density(const char* mixture_json, const char* noise_json, char** csv_out);

/* ---- evaluation ---- */

/* words_jsonl: one word-box object per line. Row cuts come from
 * truth row boundaries when present in boundaries_json, otherwise they
 * are inferred from the word boxes. */
gx_status gx_eval_casa(const char* boundaries_json, const char* words_jsonl,
                       const char* truth_json, const char* config_json, char** report_json_out);

/* ---- benchmark suites ---- */

gx_status gx_bench(const char* suite_config_json, char** results_json_out);

#ifdef __cplusplus
}
#endif

#endif /* GRIDEX_H */
