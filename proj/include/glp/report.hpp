// SPDX-License-Identifier: MIT
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glp/program.hpp"

namespace glp {

// Outcome quality, best to worst.  ProvedSymbolic: holds for every ground
// instance, shown symbolically.  VerifiedToBound: holds for every instance
// over the universe slice of the recorded depth.  Refuted: a concrete
// counterexample exists.  Invalid: the annotation does not fit the program,
// so the question is ill-posed.
enum class CheckStatus { ProvedSymbolic, VerifiedToBound, Refuted, Invalid };

std::string status_str(CheckStatus s);

// One entry of the obligation log: which clause and proof condition was
// checked, and how it went.
struct Obligation {
  int clause_id = 0;      // 0 when not tied to a clause
  std::string condition;  // stable id, e.g. "decrease", "model", "completion"
  CheckStatus verdict = CheckStatus::ProvedSymbolic;
  std::string detail;

  std::string str() const;
};

// Counterexample: a ground clause instance (an atom is wrapped as a fact)
// together with the obligation it violates.
struct Witness {
  Clause instance;
  std::string obligation;
  std::string detail;

  std::string str() const;
};

struct CheckReport {
  CheckStatus status = CheckStatus::ProvedSymbolic;
  int bound = 0;  // universe depth, meaningful for VerifiedToBound
  std::vector<Obligation> log;
  std::optional<Witness> witness;  // set when Refuted
  std::string reason;              // set when Invalid

  static CheckReport proved();
  static CheckReport bounded(int depth);
  static CheckReport refuted(Witness w);
  static CheckReport invalid(std::string reason);

  bool ok() const {
    return status == CheckStatus::ProvedSymbolic ||
           status == CheckStatus::VerifiedToBound;
  }

  // Pessimistic aggregation: Invalid dominates, then Refuted; a bounded
  // sub-result keeps the overall result bounded (at the weakest depth).
  // The sub-report's log is appended, tagged with `condition` when the
  // sub-report has no log of its own.
  void absorb(const CheckReport& sub, int clause_id = 0,
              const std::string& condition = {});

  void note(int clause_id, const std::string& condition, CheckStatus verdict,
            const std::string& detail = {});

  std::string str() const;
};

}  // namespace glp
