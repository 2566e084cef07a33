#ifndef UEGS_STORE_HPP
#define UEGS_STORE_HPP

#include <string>

#include "uegs/representation.hpp"

namespace uegs {

// Canonical JSON serializations: fixed key order, sorted term order, decimal
// strings for all big numbers — a save/load/save round trip is byte-identical.

std::string cmp_to_json(const ModularPolynomial& m);
ModularPolynomial cmp_from_json(const std::string& text);
void save_cmp(const ModularPolynomial& m, const std::string& path);
ModularPolynomial load_cmp(const std::string& path);

std::string uegs_to_json(const RationalRepresentation& r);
// check_against: optional modular polynomial whose content hash must match
RationalRepresentation uegs_from_json(const std::string& text,
                                      const ModularPolynomial* check_against = nullptr);
void save_uegs(const RationalRepresentation& r, const std::string& path);
RationalRepresentation load_uegs(const std::string& path,
                                 const ModularPolynomial* check_against = nullptr);

std::string read_file(const std::string& path);   // missing_artifact on failure
void write_file(const std::string& path, const std::string& content);

}  // namespace uegs

#endif
