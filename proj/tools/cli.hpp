#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "jetlab/io.hpp"

namespace jetlab::cli {

// Every tunable of every subcommand, with the defaults in one place. Each
// output carries these in its provenance block.
struct RunConfig {
  std::string command;
  std::string domain = "comb";
  std::string function;
  int order = 1;
  double h = 1.0 / 1024.0;
  double margin = 0.5;
  int nMax = 20;
  int depth = 4;
  int phiDepth = 30;
  double ceiling = 1e3;
  double tol = 1e-2;
  double cFactor = 10.0;
  int band = 3;
  double neighborhood = 0.05;
  std::string space = "F";
  std::string on = "q";  // q, omega or window
  std::string field;
  std::string cert;
  std::string out;
  std::string csv;

  // InvalidArgument on the first out-of-range value.
  void validate() const;
  Provenance provenance() const;
};

enum ExitCode { kOk = 0, kViolation = 1, kUsage = 2, kFailure = 3 };

// args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jetlab::cli
