// SPDX-License-Identifier: MIT
#include "glp/report.hpp"

#include <algorithm>

namespace glp {

std::string status_str(CheckStatus s) {
  switch (s) {
    case CheckStatus::ProvedSymbolic: return "proved";
    case CheckStatus::VerifiedToBound: return "verified-to-bound";
    case CheckStatus::Refuted: return "refuted";
    case CheckStatus::Invalid: return "invalid";
  }
  return "?";
}

std::string Obligation::str() const {
  std::string s = "clause " + std::to_string(clause_id) + " " + condition +
                  ": " + status_str(verdict);
  if (!detail.empty()) s += " (" + detail + ")";
  return s;
}

std::string Witness::str() const {
  std::string s = obligation + " fails on " + instance.str();
  if (!detail.empty()) s += " (" + detail + ")";
  return s;
}

CheckReport CheckReport::proved() { return {}; }

CheckReport CheckReport::bounded(int depth) {
  CheckReport r;
  r.status = CheckStatus::VerifiedToBound;
  r.bound = depth;
  return r;
}

CheckReport CheckReport::refuted(Witness w) {
  CheckReport r;
  r.status = CheckStatus::Refuted;
  r.witness = std::move(w);
  return r;
}

CheckReport CheckReport::invalid(std::string reason) {
  CheckReport r;
  r.status = CheckStatus::Invalid;
  r.reason = std::move(reason);
  return r;
}

namespace {

int severity(CheckStatus s) {
  switch (s) {
    case CheckStatus::ProvedSymbolic: return 0;
    case CheckStatus::VerifiedToBound: return 1;
    case CheckStatus::Refuted: return 2;
    case CheckStatus::Invalid: return 3;
  }
  return 3;
}

}  // namespace

void CheckReport::absorb(const CheckReport& sub, int clause_id,
                         const std::string& condition) {
  if (sub.log.empty() && !condition.empty())
    note(clause_id, condition, sub.status,
         sub.status == CheckStatus::Invalid ? sub.reason : std::string{});
  for (const Obligation& o : sub.log)
    log.push_back(Obligation{o.clause_id ? o.clause_id : clause_id,
                             condition.empty() || !o.clause_id
                                 ? o.condition
                                 : condition + "/" + o.condition,
                             o.verdict, o.detail});

  if (severity(sub.status) > severity(status)) {
    status = sub.status;
    if (sub.status == CheckStatus::VerifiedToBound) bound = sub.bound;
    if (sub.status == CheckStatus::Refuted) {
      witness = sub.witness;
      // A leaf report is tagged by its caller, witness included.
      if (witness && sub.log.empty() && !condition.empty())
        witness->obligation = condition;
    }
    if (sub.status == CheckStatus::Invalid) reason = sub.reason;
  } else if (status == CheckStatus::VerifiedToBound &&
             sub.status == CheckStatus::VerifiedToBound) {
    bound = std::min(bound, sub.bound);
  }
}

void CheckReport::note(int clause_id, const std::string& condition,
                       CheckStatus verdict, const std::string& detail) {
  log.push_back(Obligation{clause_id, condition, verdict, detail});
}

std::string CheckReport::str() const {
  std::string s = status_str(status);
  if (status == CheckStatus::VerifiedToBound)
    s += " (depth " + std::to_string(bound) + ")";
  if (status == CheckStatus::Invalid && !reason.empty()) s += ": " + reason;
  if (witness) s += "\n  witness: " + witness->str();
  for (const Obligation& o : log) s += "\n  " + o.str();
  return s;
}

}  // namespace glp
