#pragma once

#include <doctest.h>

#include "epilim/error.hpp"

// Asserts that `expr` throws epilim::Error carrying `code`.
#define CHECK_ERROR_CODE(expr, expected)                  \
  do {                                                    \
    bool thrown_ = false;                                 \
    try {                                                 \
      (void)(expr);                                       \
    } catch (const epilim::Error& e_) {                   \
      thrown_ = true;                                     \
      CHECK(e_.code() == (expected));                     \
    }                                                     \
    CHECK_MESSAGE(thrown_, "expected epilim::Error");     \
  } while (false)
