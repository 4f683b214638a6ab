// Copyright 2026 The weakprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef WEAKPROBE_TOOLS_OUTPUT_H
#define WEAKPROBE_TOOLS_OUTPUT_H

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace weakprobe::cli {

/// File-system failure while writing results; maps to exit code 4.
class IoError : public std::runtime_error {
   public:
    explicit IoError(const std::string &what) : std::runtime_error(what) {
    }
};

/// Shortest text that is still exact to 17 significant digits.
std::string format_double(double v);

/// Ordered JSON object writer (key order is insertion order).
class JsonObject {
   public:
    JsonObject &add(std::string_view key, double value);
    JsonObject &add(std::string_view key, std::size_t value);
    JsonObject &add(std::string_view key, std::string_view value);
    JsonObject &add(std::string_view key, const char *value) {
        return add(key, std::string_view(value));
    }
    JsonObject &add(std::string_view key, const std::vector<double> &values);
    JsonObject &add(std::string_view key, const std::vector<std::string> &values);
    JsonObject &add_object(std::string_view key, const JsonObject &value);
    JsonObject &add_raw(std::string_view key, std::string raw);
    std::string str() const;

   private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

/// Output directory for one run. Every file written through it is listed in
/// the manifest written by finish().
class OutputDir {
   public:
    explicit OutputDir(std::filesystem::path root);

    const std::filesystem::path &root() const {
        return root_;
    }
    void write(const std::string &name, std::string_view contents);
    /// Writes manifest.sha256 ("<sha256>  <name>" per file, sorted by name).
    void finish();

   private:
    std::filesystem::path root_;
    std::vector<std::string> files_;
};

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path &path);

}  // namespace weakprobe::cli

#endif
