#include "uegs/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uegs/gauss_sums.hpp"
#include "uegs/modular_functions.hpp"

namespace uegs {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::missing_artifact, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::missing_artifact, "cannot write file: " + path);
    out << content;
    if (!out) fail(ErrorKind::missing_artifact, "write failed: " + path);
}

namespace {

void sort_terms(ModularPolynomial& m) {
    std::sort(m.terms.begin(), m.terms.end(), [](const ModPolyTerm& a, const ModPolyTerm& b) {
        if (a.i != b.i) return a.i > b.i;
        return a.k > b.k;
    });
}

void validate_cmp(const ModularPolynomial& m) {
    auto spec = EtaQuotientSpec::for_prime(m.ell);  // rejects non-supported ell
    if (m.v != spec.v)
        fail(ErrorKind::missing_artifact, "cmp: v = " + std::to_string(m.v) +
                                              " does not match (ell-1)/gcd(ell-1,12)");
    if (m.terms.empty() || m.terms.front().i != m.ell + 1 || m.terms.front().k != 0 ||
        m.terms.front().c != 1)
        fail(ErrorKind::missing_artifact, "cmp: not monic of degree ell + 1");
    for (const auto& t : m.terms) {
        if (t.i < 0 || t.i > m.ell + 1 || t.k < 0 || t.k > m.v)
            fail(ErrorKind::missing_artifact, "cmp: term index out of range");
        if (t.i * m.v > (m.v - t.k) * m.ell + m.v)
            fail(ErrorKind::missing_artifact, "cmp: term violates the order bound iv <= (v-k)l+v");
        if (t.c == 0) fail(ErrorKind::missing_artifact, "cmp: zero coefficient stored");
    }
}

json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        fail(ErrorKind::missing_artifact, std::string(what) + ": malformed JSON");
    return j;
}

}  // namespace

std::string cmp_to_json(const ModularPolynomial& m) {
    ModularPolynomial s = m;
    sort_terms(s);
    json j;
    j["format"] = "cmp/1";
    j["ell"] = s.ell;
    j["v"] = s.v;
    json terms = json::array();
    for (const auto& t : s.terms) terms.push_back(json::array({t.i, t.k, to_string(t.c)}));
    j["terms"] = std::move(terms);
    return j.dump() + "\n";
}

ModularPolynomial cmp_from_json(const std::string& text) {
    json j = parse(text, "cmp");
    if (!j.contains("format") || j["format"] != "cmp/1")
        fail(ErrorKind::missing_artifact, "cmp: format version mismatch");
    ModularPolynomial m;
    try {
        m.ell = j.at("ell").get<long>();
        m.v = j.at("v").get<long>();
        for (const auto& t : j.at("terms")) {
            if (!t.is_array() || t.size() != 3)
                fail(ErrorKind::missing_artifact, "cmp: malformed term");
            m.terms.push_back(ModPolyTerm{t[0].get<long>(), t[1].get<long>(),
                                          int_from_string(t[2].get<std::string>())});
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::missing_artifact, std::string("cmp: ") + e.what());
    }
    sort_terms(m);
    validate_cmp(m);
    return m;
}

void save_cmp(const ModularPolynomial& m, const std::string& path) {
    write_file(path, cmp_to_json(m));
}

ModularPolynomial load_cmp(const std::string& path) { return cmp_from_json(read_file(path)); }

std::string uegs_to_json(const RationalRepresentation& r) {
    json j;
    j["format"] = "uegs/1";
    j["ell"] = r.ell;
    j["n"] = r.n;
    j["g"] = r.g;
    j["xi"] = r.xi;
    j["v"] = r.v;
    j["prec"] = r.prec;
    j["modpoly_hash"] = std::to_string(r.modpoly_hash);
    json tensor = json::array();
    unsigned n = static_cast<unsigned>(r.n);
    for (const auto& [key, c] : r.tensor) {
        // canonical coefficient form: power basis at conductor n
        Cyclotomic emb = c.embedded(std::lcm(c.conductor(), n));
        auto sub = emb.to_subfield(n);
        if (!sub)
            fail(ErrorKind::internal, "uegs: tensor coefficient lies outside Q(zeta_n)");
        json co = json::array();
        for (const auto& x : sub->coeffs()) co.push_back(to_string(x));
        tensor.push_back(json::array({key[0], key[1], key[2], std::move(co)}));
    }
    j["tensor"] = std::move(tensor);
    return j.dump() + "\n";
}

RationalRepresentation uegs_from_json(const std::string& text,
                                      const ModularPolynomial* check_against) {
    json j = parse(text, "uegs");
    if (!j.contains("format") || j["format"] != "uegs/1")
        fail(ErrorKind::missing_artifact, "uegs: format version mismatch");
    RationalRepresentation r;
    try {
        r.ell = j.at("ell").get<long>();
        r.n = j.at("n").get<long>();
        r.g = j.at("g").get<long>();
        r.xi = j.at("xi").get<int>();
        r.v = j.at("v").get<long>();
        r.prec = j.at("prec").get<long>();
        r.modpoly_hash = std::stoull(j.at("modpoly_hash").get<std::string>());
        unsigned phi = euler_phi(static_cast<unsigned>(r.n));
        for (const auto& t : j.at("tensor")) {
            if (!t.is_array() || t.size() != 4 || !t[3].is_array() || t[3].size() != phi)
                fail(ErrorKind::missing_artifact, "uegs: malformed tensor entry");
            std::vector<BigRat> co;
            for (const auto& x : t[3]) co.push_back(rat_from_string(x.get<std::string>()));
            r.tensor[{t[0].get<long>(), t[1].get<long>(), t[2].get<long>()}] =
                Cyclotomic(static_cast<unsigned>(r.n), std::move(co));
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::missing_artifact, std::string("uegs: ") + e.what());
    }
    // invariant validation
    auto spec = EtaQuotientSpec::for_prime(r.ell);
    if (r.v != spec.v) fail(ErrorKind::missing_artifact, "uegs: v mismatch for ell");
    if (r.n < 2 || (r.ell - 1) % r.n != 0)
        fail(ErrorKind::missing_artifact, "uegs: n does not divide ell - 1");
    if (r.g != smallest_primitive_root(r.ell))
        fail(ErrorKind::missing_artifact, "uegs: unexpected character generator");
    if (r.xi != 1 && r.xi != -1) fail(ErrorKind::missing_artifact, "uegs: xi must be +-1");
    if (r.prec != (r.ell * r.ell + r.ell + 1) * r.v - 1)
        fail(ErrorKind::missing_artifact, "uegs: prec does not match (ell^2+ell+1)v - 1");
    for (const auto& [key, c] : r.tensor) {
        if (key[0] < 0 || key[0] >= r.ell || key[1] < 0 || key[1] > r.ell * r.ell + r.ell ||
            key[2] < 0 || key[2] >= r.v)
            fail(ErrorKind::missing_artifact, "uegs: tensor index out of bounds");
        (void)c;
    }
    if (check_against && modpoly_content_hash(*check_against) != r.modpoly_hash)
        fail(ErrorKind::missing_artifact,
             "uegs: modpoly_hash does not match the provided modular polynomial");
    return r;
}

void save_uegs(const RationalRepresentation& r, const std::string& path) {
    write_file(path, uegs_to_json(r));
}

RationalRepresentation load_uegs(const std::string& path,
                                 const ModularPolynomial* check_against) {
    return uegs_from_json(read_file(path), check_against);
}

}  // namespace uegs
