#ifndef CLOCUS_VERSION_HPP
#define CLOCUS_VERSION_HPP

namespace clocus {

inline constexpr const char* kToolVersion = "0.1.0";

// Config documents carry a schema version so old reports stay replayable.
inline constexpr int kConfigVersion = 1;

}  // namespace clocus

#endif  // CLOCUS_VERSION_HPP
