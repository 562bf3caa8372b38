#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "delab/params.hpp"
#include "delab/wgrid.hpp"

namespace delab {

/// A grid field together with the parameters recorded in its file header.
struct FieldFile {
    GridField field;
    ProblemParams params;
};

/// AWF1 layout: one text line
///   AWF1 N=3 dims=<d1>,<d2>,<d3> L=<halfwidth> alpha=<a> s=<s>\n
/// followed by little-endian IEEE-754 doubles, i3 fastest.
///
/// The CSV variant repeats the same header line, then a `i1,i2,i3,value`
/// column row and one row per cell with values printed to 17 significant digits.
std::string awf1_header(const GridSpec& spec, const ProblemParams& p);

void write_awf1(std::ostream& os, const FieldFile& ff);
FieldFile read_awf1(std::istream& is);

void write_field_csv(std::ostream& os, const FieldFile& ff);
FieldFile read_field_csv(std::istream& is);

/// Dispatches on the extension: ".csv" selects the CSV variant, anything else AWF1.
/// Throws MalformedFile on parse errors and missing files.
void write_field_file(const std::filesystem::path& path, const FieldFile& ff);
FieldFile read_field_file(const std::filesystem::path& path);

}  // namespace delab
