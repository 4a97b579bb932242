#pragma once

// One JSON request in, one JSON report out. The request names a command
// (parse, classify, translate, seqform, eval-app, compact, check, omega,
// extract, demo) and carries its inputs; see README for the fields.

#include <string>

namespace realiz::service {

enum Outcome { kOk = 0, kFailed = 1, kUnknown = 2 };

struct Response {
  Outcome outcome;
  /// Keys sorted, so identical requests give identical bytes.
  std::string report;
};

Response run(const std::string& request);

}  // namespace realiz::service
