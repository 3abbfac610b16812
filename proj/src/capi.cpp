#define NILRED_API __attribute__((visibility("default")))
#include "nilred.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "report.hpp"
#include "selftest.hpp"

using namespace nilred;

struct nilred_session {
  Options options;
  std::string last_error;
};

struct nilred_algebra {
  BuiltAlgebra built;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

nilred_status record(nilred_session* s, nilred_status code, const std::string& msg) {
  if (s) s->last_error = msg;
  return code;
}

template <class Fn>
nilred_status guarded(nilred_session* s, Fn&& fn) {
  if (!s) return NILRED_ERR_INTERNAL;
  s->last_error.clear();
  try {
    return fn();
  } catch (const ParseError& e) {
    return record(s, NILRED_ERR_PARSE, e.what());
  } catch (const ValidationError& e) {
    return record(s, NILRED_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return record(s, NILRED_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(s, NILRED_ERR_INTERNAL, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* nilred_version(void) { return "0.1.0"; }

nilred_session* nilred_session_new(void) { return new (std::nothrow) nilred_session(); }

void nilred_session_free(nilred_session* session) { delete session; }

nilred_status nilred_session_set_mode(nilred_session* session, nilred_mode mode) {
  if (!session) return NILRED_ERR_INTERNAL;
  if (mode != NILRED_MODE_EXACT && mode != NILRED_MODE_FLOAT)
    return record(session, NILRED_ERR_VALIDATION, "unknown mode");
  session->options.mode = (mode == NILRED_MODE_EXACT) ? Mode::Exact : Mode::Float;
  return NILRED_OK;
}

nilred_status nilred_session_set_tolerance(nilred_session* session, double tol) {
  if (!session) return NILRED_ERR_INTERNAL;
  if (!(tol > 0))
    return record(session, NILRED_ERR_VALIDATION, "tolerance must be positive");
  session->options.tol = tol;
  return NILRED_OK;
}

nilred_status nilred_session_set_classify_core(nilred_session* session, int enable) {
  if (!session) return NILRED_ERR_INTERNAL;
  session->options.classify_core = enable != 0;
  return NILRED_OK;
}

const char* nilred_session_last_error(const nilred_session* session) {
  return session ? session->last_error.c_str() : "null session";
}

nilred_status nilred_parse(nilred_session* session, const char* text,
                           nilred_algebra*** out_algebras, size_t* out_count) {
  if (!out_algebras || !out_count)
    return record(session, NILRED_ERR_INTERNAL, "null output argument");
  *out_algebras = nullptr;
  *out_count = 0;
  if (!text) return record(session, NILRED_ERR_INTERNAL, "null input text");
  return guarded(session, [&]() {
    auto specs = parse_spec(text);
    auto** arr = static_cast<nilred_algebra**>(
        std::malloc(sizeof(nilred_algebra*) * (specs.size() + 1)));
    if (!arr) return record(session, NILRED_ERR_INTERNAL, "out of memory");
    size_t filled = 0;
    try {
      for (const auto& spec : specs) {
        arr[filled] = new nilred_algebra{build_algebra(spec)};
        ++filled;
      }
    } catch (...) {
      for (size_t i = 0; i < filled; ++i) delete arr[i];
      std::free(arr);
      throw;
    }
    arr[specs.size()] = nullptr;
    *out_algebras = arr;
    *out_count = specs.size();
    return NILRED_OK;
  });
}

void nilred_algebra_free(nilred_algebra* algebra) { delete algebra; }

void nilred_array_free(nilred_algebra** algebras) { std::free(algebras); }

const char* nilred_algebra_name(const nilred_algebra* algebra) {
  return algebra ? algebra->built.name().c_str() : "";
}

size_t nilred_algebra_dim_v(const nilred_algebra* algebra) {
  return algebra ? algebra->built.j.dim_v : 0;
}

size_t nilred_algebra_dim_z(const nilred_algebra* algebra) {
  return algebra ? algebra->built.j.dim_z : 0;
}

nilred_status nilred_classify(nilred_session* session, const nilred_algebra* algebra,
                              nilred_format format, char** out) {
  if (!out) return record(session, NILRED_ERR_INTERNAL, "null output argument");
  *out = nullptr;
  if (!algebra) return record(session, NILRED_ERR_INTERNAL, "null algebra");
  return guarded(session, [&]() {
    std::string text = render_classify({algebra->built}, session->options,
                                       format == NILRED_FORMAT_JSON);
    *out = dup_string(text);
    return *out ? NILRED_OK : record(session, NILRED_ERR_INTERNAL, "out of memory");
  });
}

nilred_status nilred_compare(nilred_session* session, const nilred_algebra* left,
                             const nilred_algebra* right, nilred_format format,
                             char** out) {
  if (!out) return record(session, NILRED_ERR_INTERNAL, "null output argument");
  *out = nullptr;
  if (!left || !right) return record(session, NILRED_ERR_INTERNAL, "null algebra");
  return guarded(session, [&]() {
    std::string text = render_compare(left->built, right->built, session->options,
                                      format == NILRED_FORMAT_JSON);
    *out = dup_string(text);
    return *out ? NILRED_OK : record(session, NILRED_ERR_INTERNAL, "out of memory");
  });
}

nilred_status nilred_export(nilred_session* session, const nilred_algebra* algebra,
                            nilred_format format, char** out) {
  if (!out) return record(session, NILRED_ERR_INTERNAL, "null output argument");
  *out = nullptr;
  if (!algebra) return record(session, NILRED_ERR_INTERNAL, "null algebra");
  return guarded(session, [&]() {
    std::string text = render_export({algebra->built}, format == NILRED_FORMAT_JSON);
    *out = dup_string(text);
    return *out ? NILRED_OK : record(session, NILRED_ERR_INTERNAL, "out of memory");
  });
}

namespace {

nilred_status render_many(nilred_session* session, const nilred_algebra* const* algebras,
                          size_t count, nilred_format format, char** out, bool classify) {
  if (!out) return record(session, NILRED_ERR_INTERNAL, "null output argument");
  *out = nullptr;
  if (!algebras && count > 0) return record(session, NILRED_ERR_INTERNAL, "null algebra array");
  return guarded(session, [&]() {
    std::vector<BuiltAlgebra> list;
    list.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!algebras[i]) return record(session, NILRED_ERR_INTERNAL, "null algebra");
      list.push_back(algebras[i]->built);
    }
    std::string text = classify
                           ? render_classify(list, session->options,
                                             format == NILRED_FORMAT_JSON)
                           : render_export(list, format == NILRED_FORMAT_JSON);
    *out = dup_string(text);
    return *out ? NILRED_OK : record(session, NILRED_ERR_INTERNAL, "out of memory");
  });
}

}  // namespace

nilred_status nilred_classify_many(nilred_session* session,
                                   const nilred_algebra* const* algebras, size_t count,
                                   nilred_format format, char** out) {
  return render_many(session, algebras, count, format, out, true);
}

nilred_status nilred_export_many(nilred_session* session,
                                 const nilred_algebra* const* algebras, size_t count,
                                 nilred_format format, char** out) {
  return render_many(session, algebras, count, format, out, false);
}

nilred_status nilred_selftest(nilred_session* session, nilred_format format, char** out) {
  if (!out) return record(session, NILRED_ERR_INTERNAL, "null output argument");
  *out = nullptr;
  return guarded(session, [&]() {
    auto results = run_selftest();
    *out = dup_string(render_selftest(results, format == NILRED_FORMAT_JSON));
    if (!*out) return record(session, NILRED_ERR_INTERNAL, "out of memory");
    if (!selftest_passed(results))
      return record(session, NILRED_ERR_INTERNAL, "selftest criteria failed");
    return NILRED_OK;
  });
}

void nilred_string_free(char* str) { std::free(str); }

}  // extern "C"
