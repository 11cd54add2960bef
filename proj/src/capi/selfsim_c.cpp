#include "selfsim/selfsim.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "selfsim/commands.hpp"
#include "selfsim/error.hpp"

struct selfsim_problem {
  selfsim::ProblemSpec spec;
};

namespace {

thread_local std::string last_error;

selfsim_status status_of(selfsim::ErrorCode code) {
  using selfsim::ErrorCode;
  switch (code) {
    case ErrorCode::Usage:
      return SELFSIM_ERR_USAGE;
    case ErrorCode::Parse:
      return SELFSIM_ERR_PARSE;
    case ErrorCode::ModelMismatch:
      return SELFSIM_ERR_MODEL_MISMATCH;
    case ErrorCode::InvalidSubgroup:
      return SELFSIM_ERR_INVALID_SUBGROUP;
    case ErrorCode::NotInLattice:
      return SELFSIM_ERR_NOT_IN_LATTICE;
    case ErrorCode::DomainError:
      return SELFSIM_ERR_DOMAIN;
    case ErrorCode::InvalidTransversal:
      return SELFSIM_ERR_INVALID_TRANSVERSAL;
    case ErrorCode::InconsistentEndomorphism:
      return SELFSIM_ERR_INCONSISTENT_ENDOMORPHISM;
    case ErrorCode::NotAnAutomorphism:
      return SELFSIM_ERR_NOT_AN_AUTOMORPHISM;
    case ErrorCode::Unsupported:
      return SELFSIM_ERR_UNSUPPORTED;
    case ErrorCode::NoFixedElement:
      return SELFSIM_ERR_NO_FIXED_ELEMENT;
    case ErrorCode::SearchExhausted:
      return SELFSIM_ERR_SEARCH_EXHAUSTED;
    case ErrorCode::InvalidK:
      return SELFSIM_ERR_INVALID_K;
    case ErrorCode::ResourceCap:
      return SELFSIM_ERR_RESOURCE_CAP;
    case ErrorCode::InsufficientRange:
      return SELFSIM_ERR_INSUFFICIENT_RANGE;
    case ErrorCode::Internal:
      return SELFSIM_ERR_INTERNAL;
  }
  return SELFSIM_ERR_INTERNAL;
}

char* duplicate(const std::string& s) {
  if (s.empty()) return nullptr;
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
selfsim_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const selfsim::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SELFSIM_ERR_RESOURCE_CAP;
  } catch (const std::exception& e) {
    last_error = std::string("Internal: ") + e.what();
    return SELFSIM_ERR_INTERNAL;
  }
}

selfsim_status emit(const selfsim::CommandOutput& result, selfsim_output* out) {
  if (!out) throw selfsim::Error(selfsim::ErrorCode::Usage, "output pointer is null");
  out->text = duplicate(result.text);
  out->dot = duplicate(result.dot);
  out->csv = duplicate(result.csv);
  return result.exit_code == 0 ? SELFSIM_OK : SELFSIM_CHECK_FAILED;
}

const selfsim::ProblemSpec& spec_of(const selfsim_problem* p) {
  if (!p) throw selfsim::Error(selfsim::ErrorCode::Usage, "problem handle is null");
  return p->spec;
}

std::string str(const char* s) {
  if (!s) throw selfsim::Error(selfsim::ErrorCode::Usage, "null string argument");
  return s;
}

selfsim_status store(selfsim::ProblemSpec spec, selfsim_problem** out) {
  if (!out) throw selfsim::Error(selfsim::ErrorCode::Usage, "output handle pointer is null");
  *out = new selfsim_problem{std::move(spec)};
  return SELFSIM_OK;
}

}  // namespace

extern "C" {

const char* selfsim_status_name(selfsim_status status) {
  switch (status) {
    case SELFSIM_OK:
      return "Ok";
    case SELFSIM_CHECK_FAILED:
      return "CheckFailed";
    case SELFSIM_ERR_USAGE:
      return "Usage";
    case SELFSIM_ERR_PARSE:
      return "Parse";
    case SELFSIM_ERR_MODEL_MISMATCH:
      return "ModelMismatch";
    case SELFSIM_ERR_INVALID_SUBGROUP:
      return "InvalidSubgroup";
    case SELFSIM_ERR_NOT_IN_LATTICE:
      return "NotInLattice";
    case SELFSIM_ERR_DOMAIN:
      return "DomainError";
    case SELFSIM_ERR_INVALID_TRANSVERSAL:
      return "InvalidTransversal";
    case SELFSIM_ERR_INCONSISTENT_ENDOMORPHISM:
      return "InconsistentEndomorphism";
    case SELFSIM_ERR_NOT_AN_AUTOMORPHISM:
      return "NotAnAutomorphism";
    case SELFSIM_ERR_UNSUPPORTED:
      return "Unsupported";
    case SELFSIM_ERR_NO_FIXED_ELEMENT:
      return "NoFixedElement";
    case SELFSIM_ERR_SEARCH_EXHAUSTED:
      return "SearchExhausted";
    case SELFSIM_ERR_INVALID_K:
      return "InvalidK";
    case SELFSIM_ERR_RESOURCE_CAP:
      return "ResourceCap";
    case SELFSIM_ERR_INSUFFICIENT_RANGE:
      return "InsufficientRange";
    case SELFSIM_ERR_INTERNAL:
      return "Internal";
  }
  return "Unknown";
}

const char* selfsim_last_error(void) { return last_error.c_str(); }

selfsim_status selfsim_problem_load_file(const char* path, selfsim_problem** out) {
  return guarded([&] { return store(selfsim::load_problem(str(path)), out); });
}

selfsim_status selfsim_problem_load_json(const char* json, selfsim_problem** out) {
  return guarded([&] { return store(selfsim::parse_problem(str(json)), out); });
}

selfsim_status selfsim_problem_load_bundled(const char* name, selfsim_problem** out) {
  return guarded([&] { return store(selfsim::bundled_problem(str(name)), out); });
}

void selfsim_problem_free(selfsim_problem* problem) { delete problem; }

selfsim_status selfsim_act(const selfsim_problem* p, const char* element, const char* word, selfsim_output* out) {
  return guarded([&] { return emit(selfsim::run_act(spec_of(p), str(element), str(word)), out); });
}

selfsim_status selfsim_state(const selfsim_problem* p, const char* element, const char* word, selfsim_output* out) {
  return guarded([&] { return emit(selfsim::run_state(spec_of(p), str(element), str(word)), out); });
}

selfsim_status selfsim_automaton(const selfsim_problem* p, const char* const* seeds, size_t seed_count,
                                 size_t max_states, size_t max_depth, selfsim_output* out) {
  return guarded([&] {
    std::vector<std::string> list;
    for (size_t i = 0; i < seed_count; ++i) list.push_back(str(seeds[i]));
    selfsim::ExplorationBounds bounds;
    if (max_states) bounds.max_states = max_states;
    if (max_depth) bounds.max_depth = max_depth;
    return emit(selfsim::run_automaton(spec_of(p), list, bounds), out);
  });
}

selfsim_status selfsim_recursion(const selfsim_problem* p, const char* const* names, size_t name_count,
                                 selfsim_output* out) {
  return guarded([&] {
    std::vector<std::string> list;
    for (size_t i = 0; i < name_count; ++i) list.push_back(str(names[i]));
    return emit(selfsim::run_recursion(spec_of(p), list), out);
  });
}

selfsim_status selfsim_classify(const selfsim_problem* p, int json, selfsim_output* out) {
  return guarded([&] { return emit(selfsim::run_classify(spec_of(p), json != 0), out); });
}

selfsim_status selfsim_digits(const selfsim_problem* p, const char* mode, long k, selfsim_output* out) {
  return guarded([&] { return emit(selfsim::run_digits(spec_of(p), str(mode), k), out); });
}

selfsim_status selfsim_schreier(const selfsim_problem* p, size_t level, const char* basepoint, int want_dot,
                                selfsim_output* out) {
  return guarded([&] { return emit(selfsim::run_schreier(spec_of(p), level, std::string(basepoint ? basepoint : ""), want_dot != 0), out); });
}

selfsim_status selfsim_reproduction_suite(selfsim_output* out) {
  return guarded([&] { return emit(selfsim::run_reproduction_suite(), out); });
}

void selfsim_output_free(selfsim_output* out) {
  if (!out) return;
  std::free(out->text);
  std::free(out->dot);
  std::free(out->csv);
  out->text = out->dot = out->csv = nullptr;
}

}  // extern "C"
