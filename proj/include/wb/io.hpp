#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wb/coloured.hpp"
#include "wb/conviviality.hpp"
#include "wb/gadgets.hpp"
#include "wb/gain.hpp"
#include "wb/group.hpp"
#include "wb/logic.hpp"
#include "wb/matroid.hpp"

namespace wb {

// Text formats. Lines are whitespace-tokenized; '#' starts a comment; '-'
// denotes the empty subset. Every writer's output is readable back.

FiniteGroup read_group_text(const std::string& text, const Limits& lim = default_limits());
FiniteGroup read_group_file(const std::string& path, const Limits& lim = default_limits());
/// Accepts "cyclic20", "dihedral4", "symmetric3" or the spaced spelling.
FiniteGroup parse_inline_group(const std::string& spec, const Limits& lim = default_limits());
void write_group(std::ostream& os, const FiniteGroup& g);

struct GainGraphFile {
  Gaining gaining;
  std::optional<GadgetManifest> manifest;
};
GainGraphFile read_gaingraph_text(const std::string& text, const Limits& lim = default_limits());
GainGraphFile read_gaingraph_file(const std::string& path, const Limits& lim = default_limits());
void write_gaingraph(std::ostream& os, const Gaining& g, const GadgetManifest* manifest = nullptr);
void write_gaingraph_file(const std::string& path, const Gaining& g,
                          const GadgetManifest* manifest = nullptr);

struct HypergraphFile {
  Hypergraph hypergraph;
  bool matroid_header = false; // axiom-checked on read when set
};
HypergraphFile read_hypergraph_text(const std::string& text, const Limits& lim = default_limits());
HypergraphFile read_hypergraph_file(const std::string& path, const Limits& lim = default_limits());
Matroid read_matroid_file(const std::string& path, const Limits& lim = default_limits());
/// Written in circuit form.
void write_matroid(std::ostream& os, const Matroid& m);
void write_matroid_file(const std::string& path, const Matroid& m);
/// Written as an explicit hyperedge family under the `hypergraph` header.
void write_hypergraph(std::ostream& os, const Hypergraph& h);

ColouredSystem read_system_text(const std::string& text, const Limits& lim = default_limits());
ColouredSystem read_system_file(const std::string& path, const Limits& lim = default_limits());
void write_system(std::ostream& os, const ColouredSystem& s);
void write_system_file(const std::string& path, const ColouredSystem& s);

ColouredComplement read_complement_text(const std::string& text,
                                        const Limits& lim = default_limits());
ColouredComplement read_complement_file(const std::string& path,
                                        const Limits& lim = default_limits());
void write_complement(std::ostream& os, const ColouredComplement& c);
void write_complement_file(const std::string& path, const ColouredComplement& c);

Formula read_formula_file(const std::string& path, const Limits& lim = default_limits());

std::string conviviality_dot(const ConvivialityGraph& g, const std::string& name);
std::string conviviality_csv(const ConvivialityGraph& g);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace wb
