#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "septoku/census.hpp"
#include "septoku/errors.hpp"
#include "septoku/generator.hpp"
#include "septoku/modelexport.hpp"
#include "septoku/textio.hpp"

namespace py = pybind11;
using namespace septoku;

namespace {

using BoardHandle = std::shared_ptr<BoardSpec>;

BoardHandle handle(const BoardRef& b) { return std::const_pointer_cast<BoardSpec>(b); }

Family family_arg(const std::string& name) { return parse_family(name); }

}  // namespace

PYBIND11_MODULE(septoku, m) {
  m.doc() = "Septoku boards: solving, symmetry classes, generation and model export";
  m.attr("SYMBOLS") = kSymbolCount;

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<MalformedPuzzle>(m, "MalformedPuzzle", error.ptr());
  py::register_exception<FamilyMismatch>(m, "FamilyMismatch", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<LookupError>(m, "LookupError", error.ptr());

  py::class_<Region>(m, "Region")
      .def_readonly("id", &Region::id)
      .def_property_readonly("kind", [](const Region& r) { return std::string(region_kind_name(r.kind)); })
      .def_readonly("center", &Region::center)
      .def_readonly("cells", &Region::cells)
      .def("__repr__", [](const Region& r) {
        return "<Region " + std::to_string(r.id) + " " + std::string(region_kind_name(r.kind)) + ">";
      });

  py::class_<BoardSpec, BoardHandle>(m, "Board")
      .def_property_readonly("family", [](const BoardSpec& b) { return std::string(family_name(b.family())); })
      .def_property_readonly("cell_count", &BoardSpec::cell_count)
      .def_property_readonly("regions", &BoardSpec::regions)
      .def("coord", [](const BoardSpec& b, CellId c) {
        auto h = b.coord(c);
        return py::make_tuple(h.q, h.r);
      })
      .def("region_cells", &BoardSpec::region_cells)
      .def("regions_of_cell", &BoardSpec::regions_of_cell)
      .def("antipode", &BoardSpec::antipode)
      .def_property_readonly("symmetries", [](const BoardSpec& b) {
        std::vector<std::string> out;
        for (auto s : b.motions()) out.push_back(format_motion(s));
        return out;
      })
      .def("describe", [](const BoardSpec& b) { return describe_board(b); })
      .def("layout", [](const BoardSpec& b) {
        return render_layout(b, [](CellId c) { return std::to_string(c); });
      });

  m.def("board", [](const std::string& family) { return handle(build_board(family_arg(family))); },
        py::arg("family"));

  py::class_<FilledBoard>(m, "FilledBoard")
      .def(py::init([](const std::string& family, std::vector<Symbol> values) {
             return make_filled(build_board(family_arg(family)), std::move(values));
           }),
           py::arg("family"), py::arg("values"))
      .def_property_readonly("board", [](const FilledBoard& f) { return handle(f.board); })
      .def_property_readonly("family", [](const FilledBoard& f) { return std::string(family_name(f.family())); })
      .def_readonly("values", &FilledBoard::values)
      .def("at", &FilledBoard::at)
      .def("is_valid", [](const FilledBoard& f) { return check_filled(f); })
      .def("__eq__", [](const FilledBoard& a, const FilledBoard& b) { return a == b; })
      .def("__hash__", [](const FilledBoard& f) { return py::hash(py::tuple(py::cast(f.values))); })
      .def("__str__", [](const FilledBoard& f) { return format_filled(f); });

  py::class_<Puzzle>(m, "Puzzle")
      .def(py::init([](const std::string& family, std::map<CellId, Symbol> seeds) {
             Puzzle p{build_board(family_arg(family)), std::move(seeds)};
             validate_puzzle(p);
             return p;
           }),
           py::arg("family"), py::arg("seeds") = std::map<CellId, Symbol>{})
      .def_property_readonly("family", [](const Puzzle& p) { return std::string(family_name(p.board->family())); })
      .def_readonly("seeds", &Puzzle::seeds)
      .def("__str__", [](const Puzzle& p) { return format_puzzle(p); });

  m.def("parse_puzzle", [](const std::string& text) { return parse_puzzle(text); });
  m.def("parse_board", [](const std::string& text) { return parse_filled(text); });

  m.def(
      "solve",
      [](const Puzzle& p, std::optional<long long> cap, int threads) {
        SolveOptions opts;
        opts.threads = threads;
        SolveOutcome out;
        {
          py::gil_scoped_release release;
          out = solve(p, cap, opts);
        }
        return py::make_tuple(out.solutions, std::string(solve_status_name(out.status)));
      },
      py::arg("puzzle"), py::arg("cap") = py::none(), py::arg("threads") = 1,
      "Returns (solutions, status) where status is 'complete' or 'capped'.");
  m.def("uniqueness", [](const Puzzle& p) { return std::string(uniqueness_name(classify_uniqueness(p))); });

  m.def("canonical_form", &canonical_form);
  m.def("apply_transform", [](const FilledBoard& f, const std::string& t) {
    return apply_transform(f, parse_transform(t));
  });
  m.def("are_equivalent", [](const FilledBoard& a, const FilledBoard& b) -> std::optional<std::string> {
    auto t = are_equivalent(a, b);
    if (!t) return std::nullopt;
    return format_transform(*t);
  });
  m.def("stabilizer_size", [](const FilledBoard& f) { return stabilizer(f).size(); });
  m.def("orbit_size", &orbit_size);

  m.def(
      "census",
      [](const std::string& family) {
        const CensusReport& r = cached_census(family_arg(family));
        py::list classes;
        for (const auto& c : r.classes) {
          py::dict d;
          d["label"] = c.label;
          d["canonical"] = c.canonical;
          d["stabilizer"] = c.stabilizer_size;
          d["orbit"] = c.orbit_size;
          d["profile"] = c.profile;
          d["pairing"] = c.pairing ? py::cast(c.pairing->to_string()) : py::none();
          d["core"] = c.core_class ? py::cast(*c.core_class) : py::none();
          classes.append(d);
        }
        py::dict checks;
        for (const auto& c : r.checks) checks[py::str(c.name)] = c.pass;
        py::dict out;
        out["family"] = family;
        out["raw_solutions"] = r.raw_solutions;
        out["total"] = r.total_labeled_boards;
        out["classes"] = classes;
        out["checks"] = checks;
        out["text"] = format_census(r);
        return out;
      },
      py::arg("family"));
  m.def("classify", [](const FilledBoard& f) { return classify(f, cached_census(f.family())); });
  m.def("standard_puzzles", &derive_standard_puzzles);

  m.def(
      "generate",
      [](const std::string& family, int seeds, std::uint64_t rng_seed, long long attempts) {
        GenerationOptions opts{seeds, attempts, false};
        auto out = generate_puzzle(family_arg(family), rng_seed, opts);
        if (!out.puzzle) throw Error("no unique puzzle within the attempt budget");
        return py::make_tuple(*out.puzzle, *out.solution);
      },
      py::arg("family"), py::arg("seeds") = kMinimumUniqueSeeds, py::arg("rng_seed") = 1,
      py::arg("attempts") = kDefaultAttemptBudget);

  m.def(
      "export_model",
      [](const Puzzle& p, const std::vector<FilledBoard>& nogoods, const std::string& format) {
        return export_model(p, nogoods, parse_model_format(format));
      },
      py::arg("puzzle"), py::arg("nogoods") = std::vector<FilledBoard>{}, py::arg("format") = "lp");
  m.def(
      "enumerate_by_exclusion",
      [](const Puzzle& p, int max_iterations) {
        NativeOracle oracle;
        auto out = enumerate_by_exclusion(p, oracle, max_iterations);
        return py::make_tuple(out.solutions, out.oracle_calls, std::string(solve_status_name(out.status)));
      },
      py::arg("puzzle"), py::arg("max_iterations") = 1000);
}
