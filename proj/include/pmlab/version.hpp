#pragma once

#define PMLAB_VERSION "0.1.0"

namespace pmlab {
inline const char* version() { return PMLAB_VERSION; }
}
