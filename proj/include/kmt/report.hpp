#ifndef KMT_REPORT_HPP
#define KMT_REPORT_HPP

#include <chrono>
#include <json.hpp>
#include <string>

namespace kmt {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "kmtower 1.0.0";

enum class Status { Pass, Fail, Unknown, OutOfScope };
std::string status_name(Status s);

struct Report {
  std::string check_id;
  std::string location;  // statement the check refers to, e.g. "Lemma 3.2"
  ojson params = ojson::object();
  Status status = Status::Pass;
  ojson witnesses = ojson::array();
  ojson notes = ojson::array();
  long elapsed_ms = 0;

  Report() = default;
  Report(std::string id, std::string loc) : check_id(std::move(id)), location(std::move(loc)) {}

  bool passed() const { return status == Status::Pass; }
  // Records a failure with its witness.
  void fail(ojson witness);
  // Downgrades a pass to unknown; never overrides a failure.
  void unknown(ojson witness);
  void note(ojson n) { notes.push_back(std::move(n)); }
  // Folds a sub-report in: failures propagate, its witnesses are kept.
  void absorb(const Report& sub);

  ojson to_json() const;
  std::string to_ndjson() const { return to_json().dump(); }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long ms() const {
    return static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count());
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace kmt

#endif
