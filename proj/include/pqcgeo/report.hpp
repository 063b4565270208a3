// Copyright 2026 The pqcgeo Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "matrix_io.hpp"

namespace pqcgeo {

inline constexpr const char *kVersion = "0.1.0";

/// Leading comment lines for every output file.
struct Provenance {
    std::string command_line;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> tolerances;

    [[nodiscard]] std::string header() const {
        std::ostringstream os;
        os << "# tool pqcgeo " << kVersion << '\n';
        os << "# command " << command_line << '\n';
        os << "# seed " << seed << '\n';
        for (const auto &[k, v] : tolerances) {
            os << "# " << k << ' ' << v << '\n';
        }
        return os.str();
    }
};

/// Key-value text report; keys print in sorted order.
class Report {
  public:
    Report &set(const std::string &key, std::string value) {
        entries_[key] = std::move(value);
        return *this;
    }
    Report &set(const std::string &key, double value) {
        return set(key, detail::formatReal(value));
    }
    Report &set(const std::string &key, std::size_t value) {
        return set(key, std::to_string(value));
    }
    Report &set(const std::string &key, const RealVector &v) {
        std::string s;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            s += (i ? "," : "") + detail::formatReal(v(i));
        }
        return set(key, s);
    }
    Report &set(const std::string &key, const char *value) {
        return set(key, std::string(value));
    }

    [[nodiscard]] std::string text() const {
        std::string out;
        for (const auto &[k, v] : entries_) {
            out += k + ' ' + v + '\n';
        }
        return out;
    }

  private:
    std::map<std::string, std::string> entries_;
};

} // namespace pqcgeo
