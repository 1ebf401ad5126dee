#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "refsem/term.hpp"

namespace refsem {

struct SourceSpan {
  size_t start = 0;
  size_t end = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, SourceSpan span)
      : std::runtime_error(msg), span(span) {}
  SourceSpan span;
};

// A typed term over an interface: Sigma (locations), Delta (type variables)
// and Gamma (named arguments).
struct Judgment {
  std::vector<uint32_t> delta;                            // tyvar ids
  std::vector<std::pair<uint32_t, TypePtr>> sigma;        // loc id -> closed type
  std::vector<std::pair<std::string, TypePtr>> args;      // variable -> type
  TermPtr term;
};

TypePtr parse_type(const std::string& text);
TermPtr parse_term(const std::string& text);
Store parse_store(const std::string& text);
Phi parse_phi(const std::string& text);
Judgment parse_judgment(const std::string& text);
Name parse_name(const std::string& text);

std::string print_type(const TypePtr& t);
std::string print_term(const TermPtr& t);
std::string print_name(const Name& n);
std::string print_abs(const AbsPtr& v);
std::string print_store(const Store& s);
std::string print_abs_store(const AbsStore& s);
std::string print_phi(const Phi& phi);
std::string print_rho(const Rho& rho);

}  // namespace refsem
