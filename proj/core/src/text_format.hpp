// Copyright 2026 The qganlab authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGANLAB_SRC_TEXT_FORMAT_HPP
#define QGANLAB_SRC_TEXT_FORMAT_HPP

#include <cstdio>
#include <string>

namespace qganlab::detail {

// Shortest decimal string that parses back to exactly `value`. Used for all
// emitted artifacts so identical runs produce identical bytes.
inline std::string format_double(double value) {
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        double parsed = 0.0;
        std::sscanf(buf, "%lf", &parsed);
        if (parsed == value) {
            break;
        }
    }
    return buf;
}

} // namespace qganlab::detail

#endif // QGANLAB_SRC_TEXT_FORMAT_HPP
