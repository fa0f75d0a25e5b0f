#include "qspread/certificate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include "json.hpp"

namespace qspread {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;
constexpr const char* kFormatName = "qspread-certificate";

json field_json(const Gf& gf) {
  return json{{"p", gf.p()},
              {"e", gf.e()},
              {"modulus", gf.modulus()},
              {"alpha", gf.alpha()},
              {"q", gf.q()}};
}

json matrix_json(const VecCtx& ctx, const Subspace& s) {
  json rows = json::array();
  for (Row r : s.rows) rows.push_back(ctx.coords(r));
  return rows;
}

json spread_json(const VecCtx& ctx, std::vector<Subspace> members) {
  std::sort(members.begin(), members.end(),
            [&](const Subspace& a, const Subspace& b) {
              return lex_less(ctx, a, b);
            });
  json out = json::array();
  for (const Subspace& m : members) out.push_back(matrix_json(ctx, m));
  return out;
}

std::string finalize(json j) {
  j.erase("digest");
  const std::string digest = sha256_hex(j.dump());
  j["digest"] = digest;
  return j.dump(2) + "\n";
}

json header_json(const Gf& gf, unsigned n, unsigned k,
                 const std::string& kind, const std::string& construction) {
  return json{{"format", {{"name", kFormatName}, {"version", kFormatVersion}}},
              {"kind", kind},
              {"field", field_json(gf)},
              {"n", n},
              {"k", k},
              {"construction", construction},
              {"pg", {{"n", n - 1}, {"k", k - 1}}}};
}

// -- parsing helpers; all throw std::runtime_error with a path-like message

const json& need(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw std::runtime_error(std::string("missing field '") + key + "'");
  return *it;
}

unsigned need_uint(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_unsigned())
    throw std::runtime_error(std::string("field '") + key +
                             "' is not an unsigned integer");
  return v.get<unsigned>();
}

Subspace parse_matrix(const VecCtx& ctx, const json& m) {
  if (!m.is_array() || m.empty())
    throw std::runtime_error("subspace matrix is not a nonempty array");
  Subspace s;
  s.n = std::uint16_t(ctx.n());
  s.k = std::uint16_t(m.size());
  for (const json& row : m) {
    if (!row.is_array() || row.size() != ctx.n())
      throw std::runtime_error("matrix row has the wrong length");
    std::vector<GfElem> coords;
    coords.reserve(row.size());
    for (const json& entry : row) {
      if (!entry.is_number_unsigned() ||
          entry.get<std::uint64_t>() >= ctx.gf().q())
        throw std::runtime_error("matrix entry is not an element of GF(q)");
      coords.push_back(entry.get<GfElem>());
    }
    s.rows.push_back(ctx.from_coords(coords));
  }
  // pivot mask from an independent reduction; the verbatim rows are kept so
  // the oracle's canonical-form check still sees any non-RREF tampering
  std::vector<Row> reduced = s.rows;
  s.pivots = rref(ctx, reduced).pivots;
  return s;
}

std::vector<Subspace> parse_spread(const VecCtx& ctx, const json& arr) {
  if (!arr.is_array())
    throw std::runtime_error("spread is not an array of matrices");
  std::vector<Subspace> out;
  out.reserve(arr.size());
  for (const json& m : arr) out.push_back(parse_matrix(ctx, m));
  return out;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) !=
      1)
    throw std::runtime_error("sha256: digest computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string emit_family_certificate(const Gf& gf, const SpreadFamily& fam,
                                    const std::string& construction) {
  const VecCtx ctx(gf, fam.n);
  json j = header_json(gf, fam.n, fam.k, "spread-family", construction);
  std::uint64_t spread_size =
      fam.spreads.empty() ? 0 : fam.spreads.front().size();
  j["metadata"] = {{"family_size", fam.spreads.size()},
                   {"spread_size", spread_size}};
  json spreads = json::array();
  for (const auto& spread : fam.spreads)
    spreads.push_back(spread_json(ctx, spread));
  j["spreads"] = std::move(spreads);
  return finalize(std::move(j));
}

std::string emit_design_certificate(const Gf& gf, const TransversalDesign& d) {
  const VecCtx ctx(gf, d.k + d.m);
  json j = header_json(gf, d.k + d.m, d.k, "transversal-design",
                       "lifted-code-design");
  const VecCtx half(gf, d.k);
  json reps = json::array();
  for (Row r : d.group_reps) reps.push_back(half.coords(r));
  j["metadata"] = {{"m", d.m},
                   {"t", d.t},
                   {"class_count", d.class_count},
                   {"class_size", d.class_size},
                   {"group_count", d.group_reps.size()}};
  j["group_reps"] = std::move(reps);
  json classes = json::array();
  for (std::uint64_t c = 0; c < d.class_count; ++c)
    classes.push_back(spread_json(
        ctx, std::vector<Subspace>(d.blocks.begin() + c * d.class_size,
                                   d.blocks.begin() + (c + 1) * d.class_size)));
  j["classes"] = std::move(classes);
  return finalize(std::move(j));
}

std::string with_recomputed_digest(const std::string& text) {
  json j = json::parse(text);
  return finalize(std::move(j));
}

CertificateCheck check_certificate(const std::string& text, int threads) {
  CertificateCheck out;
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& ex) {
    out.error = std::string("not valid JSON: ") + ex.what();
    return out;
  }

  try {
    const json& fmt = need(j, "format");
    if (need(fmt, "name").get<std::string>() != kFormatName ||
        need_uint(fmt, "version") != unsigned(kFormatVersion))
      throw std::runtime_error("unknown certificate format or version");
    out.kind = need(j, "kind").get<std::string>();
    out.construction = need(j, "construction").get<std::string>();
    out.n = need_uint(j, "n");
    out.k = need_uint(j, "k");

    const json& f = need(j, "field");
    const unsigned p = need_uint(f, "p"), e = need_uint(f, "e");
    const json& mod = need(f, "modulus");
    if (!mod.is_array()) throw std::runtime_error("modulus is not an array");
    std::vector<unsigned> modulus;
    for (const json& c : mod) modulus.push_back(c.get<unsigned>());
    const Gf gf(p, e, modulus);  // validates primality and irreducibility
    out.q = gf.q();
    if (need_uint(f, "q") != gf.q() || need_uint(f, "alpha") != gf.alpha())
      throw std::runtime_error(
          "field description disagrees with the reconstructed field");
    const VecCtx ctx(gf, out.n);

    // digest over the document with the digest field removed
    const std::string stored =
        need(j, "digest").is_string() ? j["digest"].get<std::string>() : "";
    json body = j;
    body.erase("digest");
    const std::string computed = sha256_hex(body.dump());
    CheckResult digest;
    digest.name = "digest";
    digest.pass = stored == computed;
    if (!digest.pass)
      digest.witness = "stored " + (stored.empty() ? "(none)" : stored) +
                       ", computed " + computed;
    out.report.checks.push_back(std::move(digest));

    if (out.kind == "spread-family") {
      std::vector<std::vector<Subspace>> spreads;
      for (const json& s : need(j, "spreads"))
        spreads.push_back(parse_spread(ctx, s));
      out.spread_count = spreads.size();
      out.report.merge(check_family(ctx, spreads, out.k, threads));
    } else if (out.kind == "transversal-design") {
      const json& meta = need(j, "metadata");
      TransversalDesign d;
      d.k = out.k;
      d.m = need_uint(meta, "m");
      d.t = need_uint(meta, "t");
      d.class_count = need(meta, "class_count").get<std::uint64_t>();
      d.class_size = need(meta, "class_size").get<std::uint64_t>();
      const VecCtx half(gf, d.k);
      for (const json& r : need(j, "group_reps")) {
        std::vector<GfElem> coords;
        for (const json& c : r) coords.push_back(c.get<GfElem>());
        if (coords.size() != d.k)
          throw std::runtime_error("group representative has wrong length");
        d.group_reps.push_back(half.from_coords(coords));
      }
      const json& classes = need(j, "classes");
      out.spread_count = classes.size();
      for (const json& cls : classes) {
        const auto blocks = parse_spread(ctx, cls);
        d.blocks.insert(d.blocks.end(), blocks.begin(), blocks.end());
      }
      if (d.class_count != classes.size() ||
          d.class_count * d.class_size != d.blocks.size())
        throw std::runtime_error("class layout disagrees with the metadata");
      out.report.merge(check_design(ctx, d, threads));
    } else {
      throw std::runtime_error("unknown certificate kind '" + out.kind + "'");
    }
  } catch (const std::exception& ex) {
    out.parsed = false;
    out.error = ex.what();
    return out;
  }
  out.parsed = true;
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path);
}

CertificateCheck check_certificate_file(const std::string& path,
                                        int threads) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    CertificateCheck out;
    out.error = "cannot open: " + path;
    return out;
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return check_certificate(buf.str(), threads);
}

}  // namespace qspread
