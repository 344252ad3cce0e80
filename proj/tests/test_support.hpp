#pragma once

#include "doctest.h"
#include "seucal/error.hpp"

#define CHECK_ERROR_CODE(expr, expected)                          \
    do {                                                          \
        bool seucal_threw_ = false;                               \
        try {                                                     \
            (void)(expr);                                         \
        } catch (const seucal::Error& seucal_e_) {                \
            seucal_threw_ = true;                                 \
            CHECK_MESSAGE(seucal_e_.code() == (expected),         \
                          seucal::to_string(seucal_e_.code()));   \
        }                                                         \
        CHECK_MESSAGE(seucal_threw_, "expected an error: " #expr); \
    } while (0)
