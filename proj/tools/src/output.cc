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
#include "output.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include <fmt/format.h>

namespace weakprobe::cli {

namespace {

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"':
                out += "\\\"";
                break;
            case '\\':
                out += "\\\\";
                break;
            case '\n':
                out += "\\n";
                break;
            default:
                out += c;
        }
    }
    out += '"';
    return out;
}

std::string json_number(double v) {
    if (!std::isfinite(v)) {
        return "null";
    }
    return format_double(v);
}

}  // namespace

std::string format_double(double v) {
    return fmt::format("{:.17g}", v);
}

JsonObject &JsonObject::add(std::string_view key, double value) {
    fields_.emplace_back(std::string(key), json_number(value));
    return *this;
}

JsonObject &JsonObject::add(std::string_view key, std::size_t value) {
    fields_.emplace_back(std::string(key), std::to_string(value));
    return *this;
}

JsonObject &JsonObject::add(std::string_view key, std::string_view value) {
    fields_.emplace_back(std::string(key), quote(value));
    return *this;
}

JsonObject &JsonObject::add(std::string_view key, const std::vector<double> &values) {
    std::string raw = "[";
    for (std::size_t i = 0; i < values.size(); i++) {
        raw += (i ? ", " : "") + json_number(values[i]);
    }
    raw += "]";
    fields_.emplace_back(std::string(key), std::move(raw));
    return *this;
}

JsonObject &JsonObject::add(std::string_view key, const std::vector<std::string> &values) {
    std::string raw = "[";
    for (std::size_t i = 0; i < values.size(); i++) {
        raw += (i ? ", " : "") + quote(values[i]);
    }
    raw += "]";
    fields_.emplace_back(std::string(key), std::move(raw));
    return *this;
}

JsonObject &JsonObject::add_object(std::string_view key, const JsonObject &value) {
    fields_.emplace_back(std::string(key), value.str());
    return *this;
}

JsonObject &JsonObject::add_raw(std::string_view key, std::string raw) {
    fields_.emplace_back(std::string(key), std::move(raw));
    return *this;
}

std::string JsonObject::str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < fields_.size(); i++) {
        out += (i ? ", " : "") + quote(fields_[i].first) + ": " + fields_[i].second;
    }
    out += "}";
    return out;
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec || !std::filesystem::is_directory(root_)) {
        throw IoError("cannot create output directory " + root_.string() + (ec ? ": " + ec.message() : ""));
    }
}

void OutputDir::write(const std::string &name, std::string_view contents) {
    auto path = root_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
    if (std::find(files_.begin(), files_.end(), name) == files_.end()) {
        files_.push_back(name);
    }
}

void OutputDir::finish() {
    std::vector<std::string> names = files_;
    std::sort(names.begin(), names.end());
    std::string manifest;
    for (const auto &name : names) {
        manifest += sha256_file(root_ / name) + "  " + name + "\n";
    }
    write("manifest.sha256", manifest);
}

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw IoError("SHA-256 digest failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; i++) {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

std::string sha256_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(data);
}

}  // namespace weakprobe::cli
