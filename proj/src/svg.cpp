#include "polyembed/svg.hpp"

#include <algorithm>
#include <sstream>

namespace polyembed {

namespace {

const char* fill_for(int category) {
  switch (static_cast<RegionCategory>(category)) {
    case RegionCategory::Strict: return "#f5f5dc";
    case RegionCategory::Inconsistent: return "#ffc0cb";
    case RegionCategory::Hallucination: return "#a52a2a";
    case RegionCategory::Boundary: return "#808080";
  }
  return "none";
}

}  // namespace

std::string svg_region_map(const RegionTable& table) {
  const int cell = std::max<int>(2, 640 / static_cast<int>(table.nx));
  const int w = cell * static_cast<int>(table.nx);
  const int legend = 28;
  const int h = cell * static_cast<int>(table.ny) + legend;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
     << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h
     << "\" fill=\"#ffffff\"/>\n";
  // one rect per horizontal run of equal category; lattice iy grows upward,
  // svg y grows downward
  for (std::size_t iy = 0; iy < table.ny; ++iy) {
    const int ypix = cell * static_cast<int>(table.ny - 1 - iy);
    std::size_t ix = 0;
    while (ix < table.nx) {
      const int cat = table.category[iy * table.nx + ix];
      std::size_t run = 1;
      while (ix + run < table.nx &&
             table.category[iy * table.nx + ix + run] == cat)
        ++run;
      if (cat >= 0) {
        os << "<rect x=\"" << cell * static_cast<int>(ix) << "\" y=\"" << ypix
           << "\" width=\"" << cell * static_cast<int>(run) << "\" height=\""
           << cell << "\" fill=\"" << fill_for(cat) << "\"/>\n";
      }
      ix += run;
    }
  }
  const char* names[] = {"strict", "inconsistent", "hallucination",
                         "boundary"};
  int x = 4;
  const int ly = cell * static_cast<int>(table.ny) + 6;
  for (int c = 0; c < 4; ++c) {
    os << "<rect x=\"" << x << "\" y=\"" << ly
       << "\" width=\"14\" height=\"14\" fill=\"" << fill_for(c)
       << "\" stroke=\"#555\"/>\n";
    os << "<text x=\"" << (x + 18) << "\" y=\"" << (ly + 12)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << names[c]
       << "</text>\n";
    x += 18 + 12 * static_cast<int>(std::string(names[c]).size());
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace polyembed
