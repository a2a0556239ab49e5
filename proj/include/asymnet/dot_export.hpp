#pragma once

#include <asymnet/balance.hpp>
#include <asymnet/graph.hpp>
#include <asymnet/normalize.hpp>

#include <span>
#include <string>

namespace asymnet {

struct ExportStyle {
    Feature feature = Feature::length;
    double width_min = 0.5; // penwidth range for directed edges
    double width_max = 5.0;
    std::string highlight = "red";
    double node_base = 0.3; // node width = node_base + node_per_degree * degree
    double node_per_degree = 0.05;

    /// Throws std::invalid_argument unless width_min < width_max and the node scale is non-negative.
    void validate() const;
};

/// Graphviz digraph with one statement per directed edge. Edge penwidth is an
/// affine map of f' onto [width_min, width_max]; edges lying on at least one
/// balanced triangle carry the highlight color; edges whose f' is undefined
/// are drawn at width_min with nodata="true". Vertices and edges are emitted
/// in id order, so equal inputs give byte-identical text.
std::string export_dot(const InteractionGraph& g, const NormalizedMatrix& nm, std::span<const TriadVerdict> verdicts,
                       const ExportStyle& style);

} // namespace asymnet
