#ifndef REALMAP_VERSION_HPP
#define REALMAP_VERSION_HPP

namespace realmap {

#ifndef REALMAP_BUILD_ID
#define REALMAP_BUILD_ID "unknown"
#endif

inline const char* versionString() { return "0.1.0"; }
inline const char* buildId() { return REALMAP_BUILD_ID; }

}  // namespace realmap

#endif
