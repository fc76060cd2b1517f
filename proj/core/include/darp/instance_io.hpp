#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "darp/model.hpp"

namespace darp {

enum class ParseErrorKind { MalformedHeader, WrongVertexCount, NonNumericField, DuplicateId, BadVertexLine, InvalidData };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parses the Cordeau benchmark layout:
///   m n T Q L
///   id x y d q e l      (2n+1 lines, id 0 is the depot)
/// A trailing copy of the depot with id 2n+1 is accepted and dropped.
/// The planning horizon is taken from the depot's latest time.
Instance parse_instance(std::string_view text, std::string name = {});
Instance load_instance(const std::filesystem::path& path);

/// Writes an instance back in the layout accepted by parse_instance.
/// Numbers are printed with enough digits to round-trip exactly.
std::string serialize_instance(const Instance& instance);

/// Signed relative gap to the best known cost, in percent.
double gap_percent(double cost, double bks);

class BksRegistry {
 public:
  /// The twenty R-instances with their published best known costs.
  static BksRegistry defaults();
  /// Reads "name cost" lines; blank lines and lines starting with '#' are skipped.
  static BksRegistry parse(std::string_view text);
  /// defaults(), overridden entry by entry by the file named in DARP_BKS_PATH when set.
  static BksRegistry from_environment();

  void set(const std::string& name, double cost);
  std::optional<double> lookup(const std::string& name) const;
  const std::map<std::string, double>& entries() const { return entries_; }

 private:
  std::map<std::string, double> entries_;
};

}  // namespace darp
