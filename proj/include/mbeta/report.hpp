#pragma once

// Deterministic serialization: a streaming JSON writer with fixed key order
// and 17-significant-digit floats, a flat CSV writer, FNV hashing for config
// fingerprints, and atomic file writes (temp + rename). Byte-identical
// re-runs are a contract, so no timestamps and no locale dependence.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbeta {

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Streaming JSON writer. The caller provides structure; keys are emitted in
/// call order, so output is reproducible by construction.
class JsonWriter {
 public:
  std::string str() const { return out_; }

  JsonWriter& begin_object() { return open('{'); }
  JsonWriter& end_object() { return close('}'); }
  JsonWriter& begin_array() { return open('['); }
  JsonWriter& end_array() { return close(']'); }

  JsonWriter& key(const std::string& k) {
    comma();
    out_ += '"';
    escape(k);
    out_ += "\":";
    fresh_ = true;
    return *this;
  }

  JsonWriter& value(double v) { return raw(fmt17(v)); }
  JsonWriter& value(int v) { return raw(std::to_string(v)); }
  JsonWriter& value(std::uint64_t v) { return raw(std::to_string(v)); }
  JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& value(const std::string& v) {
    comma();
    out_ += '"';
    escape(v);
    out_ += '"';
    return *this;
  }
  template <class T>
  JsonWriter& kv(const std::string& k, const T& v) {
    key(k);
    return value(v);
  }
  template <class T>
  JsonWriter& array(const std::string& k, const std::vector<T>& vs) {
    key(k);
    begin_array();
    for (const T& v : vs) value(v);
    return end_array();
  }

 private:
  JsonWriter& open(char c) {
    comma();
    out_ += c;
    fresh_ = true;
    return *this;
  }
  JsonWriter& close(char c) {
    out_ += c;
    fresh_ = false;
    return *this;
  }
  JsonWriter& raw(const std::string& s) {
    comma();
    out_ += s;
    return *this;
  }
  void comma() {
    if (!fresh_ && !out_.empty() && out_.back() != '{' && out_.back() != '[' &&
        out_.back() != ':')
      out_ += ',';
    fresh_ = false;
  }
  void escape(const std::string& s) {
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        default: out_ += c;
      }
    }
  }
  std::string out_;
  bool fresh_ = true;
};

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : cols_(header.size()) {
    append_row(header);
  }
  void append_row(const std::vector<std::string>& cells) {
    if (cells.size() != cols_) throw std::invalid_argument("CsvWriter: column mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ += ',';
      out_ += cells[i];
    }
    out_ += '\n';
  }
  const std::string& str() const { return out_; }

 private:
  std::size_t cols_;
  std::string out_;
};

/// Write-then-rename so readers never observe a partial file.
inline void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os.good()) throw std::runtime_error("atomic_write: short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace mbeta
