/*
 * libfsp: fuzzy soft set decision ranking.
 *
 * C interface over the C++ core. Objects are opaque handles released with
 * their matching *_free function. Every fallible call returns an fsp_status;
 * on failure fsp_last_error() describes the problem for the calling thread
 * until its next libfsp call.
 *
 * Buffers returned through fsp_buffer are owned by the caller and must be
 * released with fsp_buffer_free.
 */
#ifndef FSP_FSP_H
#define FSP_FSP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FSP_API __declspec(dllexport)
#else
#define FSP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fsp_status {
  FSP_OK = 0,
  FSP_ERR_DIMENSION_MISMATCH = 1,
  FSP_ERR_GRADE_OUT_OF_RANGE = 2,
  FSP_ERR_INVALID_GRADE = 3,
  FSP_ERR_DUPLICATE_ID = 4,
  FSP_ERR_INVALID_ID = 5,
  FSP_ERR_EMPTY_UNIVERSE = 6,
  FSP_ERR_EMPTY_ATTRIBUTE_SET = 7,
  FSP_ERR_UNKNOWN_ALTERNATIVE = 8,
  FSP_ERR_UNKNOWN_ATTRIBUTE = 9,
  FSP_ERR_DEGENERATE_SCORES = 10,
  FSP_ERR_SYNTAX = 11,
  FSP_ERR_INVALID_ARGUMENT = 12,
  FSP_ERR_IO = 13,
  FSP_ERR_NOT_FOUND = 14,
  FSP_ERR_BIND = 15,
  FSP_ERR_INTERNAL = 16
} fsp_status;

typedef enum fsp_format {
  FSP_FORMAT_CSV = 0,
  FSP_FORMAT_JSON = 1,
  FSP_FORMAT_TEXT = 2, /* aligned table / text histogram; output only */
  FSP_FORMAT_AUTO = 3  /* input only: JSON if the data starts with '{' */
} fsp_format;

typedef enum fsp_measure { FSP_MEASURE_G1 = 0, FSP_MEASURE_G2 = 1, FSP_MEASURE_G3 = 2 } fsp_measure;

#define FSP_MEASURE_MASK_G1 (1u << FSP_MEASURE_G1)
#define FSP_MEASURE_MASK_G2 (1u << FSP_MEASURE_G2)
#define FSP_MEASURE_MASK_G3 (1u << FSP_MEASURE_G3)
#define FSP_MEASURE_MASK_ALL (FSP_MEASURE_MASK_G1 | FSP_MEASURE_MASK_G2 | FSP_MEASURE_MASK_G3)

typedef struct fsp_buffer {
  char* data; /* NUL-terminated for convenience; size excludes the NUL */
  size_t size;
} fsp_buffer;

typedef struct fsp_assessment fsp_assessment;
typedef struct fsp_table fsp_table;
typedef struct fsp_server fsp_server;

/* One ranked row. Strings point into the table and live as long as it. */
typedef struct fsp_row {
  const char* alternative;
  size_t rank;      /* 1-based position */
  size_t tie_group; /* 1-based; equal selected-measure values share a group */
  int64_t dom, sub, equity;
  int64_t gamma1_num, gamma1_den;
  int64_t gamma2;
  int64_t gamma3_num, gamma3_den;
} fsp_row;

FSP_API const char* fsp_version(void);
FSP_API const char* fsp_status_name(fsp_status status);
FSP_API const char* fsp_last_error(void);
FSP_API void fsp_buffer_free(fsp_buffer* buffer);

/* "g1" / "G1" etc. */
FSP_API fsp_status fsp_measure_parse(const char* text, fsp_measure* out);

/* Assessments */
FSP_API fsp_status fsp_assessment_parse(const char* data, size_t size, fsp_format format, fsp_assessment** out);
FSP_API void fsp_assessment_free(fsp_assessment* assessment);
FSP_API size_t fsp_assessment_alternative_count(const fsp_assessment* assessment);
FSP_API size_t fsp_assessment_attribute_count(const fsp_assessment* assessment);
FSP_API const char* fsp_assessment_alternative_id(const fsp_assessment* assessment, size_t index);
FSP_API const char* fsp_assessment_attribute_id(const fsp_assessment* assessment, size_t index);
FSP_API fsp_status fsp_assessment_restrict(const fsp_assessment* assessment, const char* const* keep, size_t count,
                                           fsp_assessment** out);
FSP_API fsp_status fsp_assessment_emit(const fsp_assessment* assessment, fsp_format format, fsp_buffer* out);

/* Ranking */
FSP_API fsp_status fsp_rank(const fsp_assessment* assessment, fsp_measure measure, fsp_table** out);
FSP_API void fsp_table_free(fsp_table* table);
FSP_API size_t fsp_table_row_count(const fsp_table* table);
FSP_API fsp_status fsp_table_row(const fsp_table* table, size_t index, fsp_row* out);
FSP_API fsp_status fsp_table_emit(const fsp_table* table, fsp_format format, fsp_buffer* out);

/* Per-opponent domination/subjection sets, scores and measures of one alternative. */
FSP_API fsp_status fsp_explain(const fsp_assessment* assessment, const char* alternative, fsp_format format,
                               fsp_buffer* out);

/* Simulation */
typedef struct fsp_sim_config {
  uint64_t scenarios;
  size_t alternatives;
  size_t attributes;
  char grid_step[16]; /* decimal text, e.g. "0.1" */
  uint64_t seed;
  unsigned measures; /* FSP_MEASURE_MASK_* */
} fsp_sim_config;

/* 1000 scenarios, 10 alternatives, 20 attributes, grid 0.1, seed 0, all measures. */
FSP_API void fsp_sim_config_default(fsp_sim_config* config);
/* Overlays keys present in a JSON object onto *config. */
FSP_API fsp_status fsp_sim_config_from_json(const char* data, size_t size, fsp_sim_config* config);
FSP_API fsp_status fsp_simulate(const fsp_sim_config* config, fsp_format format, fsp_buffer* out);

/* HTTP service. fsp_server_create binds immediately so bind errors surface
 * here; fsp_server_listen blocks until fsp_server_stop is called from
 * another thread (effective once fsp_server_wait_ready has returned). */
typedef struct fsp_server_options {
  const char* host;        /* NULL = "127.0.0.1" */
  int port;                /* 0 = any free port */
  const char* state_dir;   /* NULL = in-memory only */
  const char* cors_origin; /* NULL = "*" */
} fsp_server_options;

FSP_API fsp_status fsp_server_create(const fsp_server_options* options, fsp_server** out);
FSP_API int fsp_server_port(const fsp_server* server);
FSP_API fsp_status fsp_server_listen(fsp_server* server);
FSP_API void fsp_server_wait_ready(const fsp_server* server);
FSP_API void fsp_server_stop(fsp_server* server);
FSP_API void fsp_server_free(fsp_server* server);

#ifdef __cplusplus
}
#endif

#endif /* FSP_FSP_H */
