#pragma once

#include <iosfwd>
#include <string>

#include "metriclab/field.hpp"

namespace metriclab {

// Flat binary field layout, little-endian:
//   int32 magic 'MLF1', int32 dim, int32 resolution[dim],
//   int32 component_count, then component-major float64 values
//   (component c, then row-major nodes).
// The reader reconstructs storage only; chart extents/boundary travel in
// the run config, not the payload.

void write_field_binary(const FieldStorage& f, std::ostream& os);
void write_field_binary(const FieldStorage& f, const std::string& path);

struct RawField {
    int dim = 0;
    std::array<int, kMaxDim> resolution{};
    int ncomp = 0;
    std::vector<double> values;  // [c * nodes + node]
};
RawField read_field_binary(std::istream& is);
RawField read_field_binary(const std::string& path);

/// CSV for inspection: one row per node, columns i0..i{dim-1}, x0..,
/// then components c0..c{m-1}.
void write_field_csv(const FieldStorage& f, std::ostream& os);
void write_field_csv(const FieldStorage& f, const std::string& path);

}  // namespace metriclab
