#ifndef HSBD_SPECFILE_HPP
#define HSBD_SPECFILE_HPP

#include <map>
#include <string>

#include "hsbd/measures.hpp"
#include "hsbd/vershik.hpp"

namespace hsbd {

// A parsed spec document: the diagram plus named orders, odometers, windows
// and kernels. All library-level invariants are re-validated on load.
struct SpecDocument {
  DiagramSpec diagram = DiagramSpec::triadic();
  std::map<std::string, OrderSpec> orders;
  std::map<std::string, OdometerSpec> odometers;
  std::map<std::string, WindowFamily> windows;
  std::map<std::string, MarkovKernel> kernels;

  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;
};

SpecDocument parse_spec(const std::string& text);

std::string serialize_spec(const SpecDocument& doc);

// Vectors file: one level per line, either "constant p/q" or
// "finite lo: p/q, p/q, ...".
std::vector<MeasureVector> parse_vectors(const std::string& text);

}  // namespace hsbd

#endif
