#pragma once

// JSON and CSV serialization. JSON documents keep a fixed field order and
// print doubles in shortest round-trip form. Masks are run-length encoded;
// jet components are full row-major arrays, zero off the mask.

#include <string>
#include <utility>
#include <vector>

#include "jetlab/certify.hpp"
#include "jetlab/domains.hpp"
#include "jetlab/glue.hpp"
#include "jetlab/grid.hpp"
#include "jetlab/hestenes.hpp"
#include "jetlab/spaces.hpp"

namespace jetlab {

// Parse errors report the offending field; Io errors report the path.
std::string readTextFile(const std::string& path);
void writeTextFile(const std::string& path, const std::string& text);

std::string toJson(const GridSpec& g);
std::string toJson(const GridMask& m);
std::string toJson(const SampledJet& j);
std::string toJson(const DomainSpec& s);
std::string toJson(const Domain& d);
std::string toJson(const HestenesCoefficients& c);
std::string toJson(const Certificate& c);
std::string toJson(const NormReport& r);
std::string toJson(const MembershipVerdict& v);
std::string toJson(const GlobalExtension& e);
std::string toJson(const LatticeExtension& e);

GridSpec gridFromJson(const std::string& text);
GridMask maskFromJson(const std::string& text);
SampledJet jetFromJson(const std::string& text);
DomainSpec domainSpecFromJson(const std::string& text);
Domain domainFromJson(const std::string& text);
HestenesCoefficients coefficientsFromJson(const std::string& text);
Certificate certificateFromJson(const std::string& text);
NormReport normReportFromJson(const std::string& text);
MembershipVerdict verdictFromJson(const std::string& text);

// Compact domain syntax for the command line:
//   comb[:nTeeth]  gap1d[:nSegments]  cantorslit[:depth]  halfball[:R]
//   rectangle[:s0,s1,t0,t1]  disk[:cx,cy,R]
DomainSpec parseDomainArg(const std::string& arg);

// Adds a "provenance" member holding key/value pairs; it is the only place
// for run-varying data.
using Provenance = std::vector<std::pair<std::string, std::string>>;
std::string withProvenance(const std::string& json, const Provenance& p);
// The document with any top-level "provenance" member removed, re-dumped.
std::string stripProvenance(const std::string& json);
// Pretty-printed form (2-space indent) of a JSON document.
std::string prettyJson(const std::string& json);

// CSV exports with a header row.
std::string certificateCsv(const Certificate& c);     // n,base_s,base_t,probe_s,probe_t,d_n
std::string jetCsv(const SampledJet& j);              // i,j,s,t,member,<alpha keys...>
std::string maskCsv(const GridMask& m);               // i,j,s,t,member for every lattice point
std::string normCsv(const NormReport& r, const GridSpec& g);  // alpha,value,s,t

}  // namespace jetlab
