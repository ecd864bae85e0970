#include "dyonlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dyonlab {

Json Json::object() {
  Json j;
  j.value_ = std::make_shared<Object>();
  return j;
}

Json Json::array() {
  Json j;
  j.value_ = std::make_shared<Array>();
  return j;
}

Json& Json::set(const std::string& key, Json v) {
  auto* obj = std::get_if<std::shared_ptr<Object>>(&value_);
  if (obj == nullptr) {
    throw std::logic_error("Json::set on a non-object value");
  }
  (**obj)[key] = std::move(v);
  return *this;
}

Json& Json::push(Json v) {
  auto* arr = std::get_if<std::shared_ptr<Array>>(&value_);
  if (arr == nullptr) {
    throw std::logic_error("Json::push on a non-array value");
  }
  (*arr)->push_back(std::move(v));
  return *this;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

void pad(std::string& out, int indent, int depth) {
  if (indent > 0) {
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
  }
}

}  // namespace

void Json::write(std::string& out, int indent, int depth) const {
  if (std::holds_alternative<std::nullptr_t>(value_)) {
    out += "null";
  } else if (auto* b = std::get_if<bool>(&value_)) {
    out += *b ? "true" : "false";
  } else if (auto* n = std::get_if<long>(&value_)) {
    out += std::to_string(*n);
  } else if (auto* d = std::get_if<double>(&value_)) {
    out += format_double(*d);
  } else if (auto* s = std::get_if<std::string>(&value_)) {
    write_escaped(out, *s);
  } else if (auto* obj = std::get_if<std::shared_ptr<Object>>(&value_)) {
    if ((*obj)->empty()) {
      out += "{}";
      return;
    }
    out += '{';
    bool first = true;
    for (const auto& [k, v] : **obj) {
      if (!first) out += ',';
      first = false;
      pad(out, indent, depth + 1);
      write_escaped(out, k);
      out += indent > 0 ? ": " : ":";
      v.write(out, indent, depth + 1);
    }
    pad(out, indent, depth);
    out += '}';
  } else if (auto* arr = std::get_if<std::shared_ptr<Array>>(&value_)) {
    if ((*arr)->empty()) {
      out += "[]";
      return;
    }
    out += '[';
    bool first = true;
    for (const auto& v : **arr) {
      if (!first) out += ',';
      first = false;
      pad(out, indent, depth + 1);
      v.write(out, indent, depth + 1);
    }
    pad(out, indent, depth);
    out += ']';
  }
}

std::string Json::dump(int indent) const {
  std::string out;
  write(out, indent, 0);
  out += '\n';
  return out;
}

Json result_entry(double value, double tolerance,
                  const std::string& provenance) {
  Json e = Json::object();
  e.set("value", value);
  e.set("tolerance", tolerance);
  e.set("provenance", provenance);
  return e;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace dyonlab
