#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

// Deterministic report emission: objects serialize with sorted keys and all
// floating values print with 17 significant digits, so identical inputs give
// byte-identical files. nlohmann/json parses configs on the way in; this
// small writer owns the way out.

namespace dyonlab {

class Json {
 public:
  Json() : value_(nullptr) {}
  Json(bool b) : value_(b) {}
  Json(double d) : value_(d) {}
  Json(long n) : value_(n) {}
  Json(int n) : value_(static_cast<long>(n)) {}
  Json(const char* s) : value_(std::string(s)) {}
  Json(std::string s) : value_(std::move(s)) {}

  static Json object();
  static Json array();

  Json& set(const std::string& key, Json v);  // object only
  Json& push(Json v);                         // array only

  std::string dump(int indent = 2) const;

 private:
  using Object = std::map<std::string, Json>;  // std::map keeps keys sorted
  using Array = std::vector<Json>;
  std::variant<std::nullptr_t, bool, long, double, std::string,
               std::shared_ptr<Object>, std::shared_ptr<Array>>
      value_;

  void write(std::string& out, int indent, int depth) const;
};

// %.17g
std::string format_double(double v);

// a result entry carrying its tolerance and provenance, per report convention
Json result_entry(double value, double tolerance, const std::string& provenance);

void write_text_file(const std::string& path, const std::string& content);

// header row then %.17g data rows
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

}  // namespace dyonlab
