#include "kmt/report.hpp"

namespace kmt {

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Unknown: return "unknown";
    case Status::OutOfScope: return "out_of_scope";
  }
  return "?";
}

void Report::fail(ojson witness) {
  status = Status::Fail;
  witnesses.push_back(std::move(witness));
}

void Report::unknown(ojson witness) {
  if (status == Status::Pass) status = Status::Unknown;
  witnesses.push_back(std::move(witness));
}

void Report::absorb(const Report& sub) {
  if (sub.status == Status::Fail)
    status = Status::Fail;
  else if (sub.status == Status::Unknown && status == Status::Pass)
    status = Status::Unknown;
  for (const auto& w : sub.witnesses) {
    ojson x = w;
    if (x.is_object() && !x.contains("check")) x["check"] = sub.check_id;
    witnesses.push_back(std::move(x));
  }
  for (const auto& n : sub.notes) notes.push_back(n);
}

ojson Report::to_json() const {
  ojson j;
  j["tool_version"] = kToolVersion;
  j["check_id"] = check_id;
  j["location"] = location;
  j["params"] = params;
  j["status"] = status_name(status);
  j["witnesses"] = witnesses;
  if (!notes.empty()) j["notes"] = notes;
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

}  // namespace kmt
