// Self-contained verification certificates.
//
// A certificate is a UTF-8 JSON document carrying a header (format version,
// full field description, parameters, construction name, witness metadata,
// projective-index translation) and a body: the spreads in construction
// order, each subspace as its reduced-row-echelon matrix with integer
// entries in [0, q), rows listed lexicographically within a spread.  An
// integrity digest — SHA-256 over the compact dump of the document without
// the digest field — makes tampering visible while leaving the file
// whitespace-insensitive.  Checking a certificate re-runs the brute-force
// oracles from the parsed data alone; the construction code is never
// consulted, so a certificate is independently re-verifiable.
#pragma once

#include <string>
#include <string_view>

#include "qspread/constructions.hpp"
#include "qspread/oracle.hpp"
#include "qspread/std_design.hpp"

namespace qspread {

// hex SHA-256 of a byte string
std::string sha256_hex(std::string_view data);

// disjoint-spread-family certificate (pretty-printed JSON, trailing newline)
std::string emit_family_certificate(const Gf& gf, const SpreadFamily& fam,
                                    const std::string& construction);

// transversal-design certificate; blocks stay in parallel-class order and
// are sorted lexicographically inside each class
std::string emit_design_certificate(const Gf& gf, const TransversalDesign& d);

// parse `text`, recompute the digest over the rest of the document, and
// re-dump: the normalization step after any deliberate edit
std::string with_recomputed_digest(const std::string& text);

struct CertificateCheck {
  bool parsed = false;     // document well-formed and structurally complete
  std::string error;       // parse/structure error when !parsed
  Report report;           // digest check + oracle verification
  std::string kind, construction;
  std::uint64_t q = 0;
  unsigned n = 0, k = 0;
  size_t spread_count = 0;

  bool pass() const { return parsed && report.pass(); }
};

// full check from the document text alone: digest, field reconstruction,
// matrix canonicality, and the spread/family or design oracles
CertificateCheck check_certificate(const std::string& text, int threads = 0);

// convenience wrappers over file IO
void write_text_file(const std::string& path, const std::string& text);
CertificateCheck check_certificate_file(const std::string& path,
                                        int threads = 0);

}  // namespace qspread
