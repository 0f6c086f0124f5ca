#ifndef P5_REPORT_HPP
#define P5_REPORT_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "p5/coloring.hpp"
#include "p5/cubulation.hpp"
#include "p5/cusp_class.hpp"
#include "p5/game.hpp"
#include "p5/morse.hpp"
#include "p5/tessellation.hpp"

namespace p5 {

/// Insertion-ordered, so dumps are byte-stable.
using Json = nlohmann::ordered_json;

std::string format_rational(const Rational& r);
/// Copy label as c characters, color 1 first.
std::string format_label(CopyLabel l, int colors);
std::string format_facet_set(FacetSet s);

Json polytope_json();
std::string polytope_dot();

Json coloring_json(const Coloring& col);

Json cusp_json(const Cusp& c, int colors);
Json manifold_json(const Tessellation& t, const std::vector<Cusp>& cusps);

Json census_json(const Cubulation& cub);
Json cube_cell_json(const Cubulation& cub, int dim, std::uint32_t i);

/// Square classification for one system; `report` comes from find_bad_families.
Json classify_json(const Cubulation& cub, const CoorientationSystem& sys, const FamilyReport& report);

Json survey_json(const SurveyReport& s, const SurveyOptions& opt);
std::string survey_csv(const SurveyReport& s);

Json cusp_classes_json(const std::vector<Cusp>& cusps, const std::vector<CuspClass>& classes);

Json certificate_json(const CollapseCertificate& cert);
Json link_table_json(const LinkSurvey& s);
std::string link_table_csv(const LinkSurvey& s);

Json fiber_json(const FiberSummary& s, const Rational& t);
/// Every fiber cell with its vertices in the carrier-cube coordinates of its source cell.
Json fiber_cells_json(const MixedComplex& mx, const PLMap& f, const LevelSet& fiber);

Json error_json(int exit_code, const std::string& kind, const std::string& message);

}  // namespace p5

#endif
