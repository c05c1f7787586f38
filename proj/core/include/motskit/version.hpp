// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

namespace motskit {

inline constexpr const char* kVersion = "motskit 0.1.0";

}  // namespace motskit
