// Copyright (c) 2026 the precision-atlas authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#define PATLAS_VERSION_MAJOR 0
#define PATLAS_VERSION_MINOR 1
#define PATLAS_VERSION_PATCH 0
#define PATLAS_VERSION_STRING "0.1.0"

namespace patlas {

inline const char* version() { return PATLAS_VERSION_STRING; }

}  // namespace patlas
