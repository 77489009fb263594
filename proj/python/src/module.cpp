// Python bindings.  Compound data (cochains, deformations, reports,
// certificates) crosses the boundary as JSON text in the same schema the CLI
// reads and writes; the qdwitt package decodes it.  Scalars and brackets get
// direct methods.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "qwitt/deform.hpp"
#include "qwitt/h2solver.hpp"
#include "qwitt/report.hpp"

namespace py = pybind11;
using namespace qwitt;

namespace {

Bas parse_basis(const std::string& kind, int n) {
    if (kind == "L") return L(n);
    if (kind == "G") return G(n);
    throw std::invalid_argument("basis kind must be 'L' or 'G'");
}

struct ContextHandle {
    std::variant<SymbolicCtx, SampledCtx> ctx;

    explicit ContextHandle(const std::string& mode, const std::string& q) {
        if (mode == "symbolic") {
            ctx.emplace<SymbolicCtx>();
        } else if (mode == "sampled") {
            ctx.emplace<SampledCtx>(QSample::parse(q));
        } else {
            throw std::invalid_argument("mode must be 'symbolic' or 'sampled'");
        }
    }

    template <class Fn>
    auto visit(Fn&& fn) const {
        return std::visit(std::forward<Fn>(fn), ctx);
    }

    std::string describe() const {
        return visit([](const auto& F) { return F.describe(); });
    }

    std::string q_number(int n) const {
        return visit([&](const auto& F) {
            using Ctx = std::decay_t<decltype(F)>;
            return Ctx::render(F.qnum(n));
        });
    }

    // [x, y] as {"L[k]": coeff, ...}; empty dict means zero
    py::dict bracket2(const std::string& kx, int nx, const std::string& ky, int ny) const {
        return visit([&](const auto& F) {
            using Ctx = std::decay_t<decltype(F)>;
            py::dict out;
            const auto e = bracket(F, parse_basis(kx, nx), parse_basis(ky, ny));
            for (const auto& [b, c] : e.terms) {
                const std::string key =
                    std::string(1, kind_char(b.kind)) + "[" + std::to_string(b.n) + "]";
                out[py::str(key)] = Ctx::render(c);
            }
            return out;
        });
    }

    std::string alpha_scale(const std::string& kind, int n) const {
        return visit([&](const auto& F) {
            using Ctx = std::decay_t<decltype(F)>;
            return Ctx::render(alpha_factor(F, parse_basis(kind, n)));
        });
    }

    bool jacobi_zero(const std::string& kx, int nx, const std::string& ky, int ny,
                     const std::string& kz, int nz) const {
        return visit([&](const auto& F) {
            return jacobi_defect(F, parse_basis(kx, nx), parse_basis(ky, ny), parse_basis(kz, nz))
                .is_zero();
        });
    }

    std::string analyze_sector_json(int parity, int s, int N, int N_core, int threads,
                                    bool certificates) const {
        return visit([&](const auto& F) {
            const Window w(N, N_core);
            SectorOptions opt;
            opt.threads = threads;
            opt.certificates = certificates;
            return report_json(analyze_sector(F, parity, s, w, opt)).dump();
        });
    }

    std::string sweep_json(bool even, bool odd, int s_min, int s_max, int N, int N_core,
                           int threads) const {
        return visit([&](const auto& F) {
            const Window w(N, N_core);
            SectorOptions opt;
            opt.threads = threads;
            return report_json(sweep(F, sector_list(even, odd, s_min, s_max), w, opt)).dump();
        });
    }

    std::string kernel_json(int parity, int s, int N, int N_core) const {
        return visit([&](const auto& F) {
            using K = typename std::decay_t<decltype(F)>::K;
            const Window w(N, N_core);
            const ColumnMap cm(w);
            Json arr = Json::array();
            for (const Cochain2<K>& f : kernel_cochains(F, parity, s, cm))
                arr.push_back(cochain2_json(F, f, w));
            return arr.dump();
        });
    }

    std::string random_coboundary_json(int parity, int s, int N, int N_core,
                                       uint64_t seed) const {
        return visit([&](const auto& F) {
            const Window w(N, N_core);
            const auto g = random_cochain1(F, parity, s, w, seed);
            return cochain2_json(F, d1(F, g), w).dump();
        });
    }

    std::string reduce_json(const std::string& cochain, int N, int N_core) const {
        return visit([&](const auto& F) {
            using K = typename std::decay_t<decltype(F)>::K;
            const Window w(N, N_core);
            const Cochain2<K> f = cochain2_from_json(F, Json::parse(cochain), w);
            const Certificate<K> cert = reduce_cocycle(F, f, w, /*check_cocycle=*/false);
            Json j = certificate_json(F, cert, w);
            j["window_cocycle"] = is_window_cocycle(F, f, w);
            return j.dump();
        });
    }

    std::string first_order_deformation_json(const std::string& cochain, int N,
                                             int N_core) const {
        return visit([&](const auto& F) {
            using K = typename std::decay_t<decltype(F)>::K;
            const Window w(N, N_core);
            const Cochain2<K> f = cochain2_from_json(F, Json::parse(cochain), w);
            return deformation_json(F, first_order_deformation(F, w, f)).dump();
        });
    }

    std::string deform_check_json(const std::string& deformation) const {
        return visit([&](const auto& F) {
            using K = typename std::decay_t<decltype(F)>::K;
            const TruncatedDeformation<K> D = deformation_from_json(F, Json::parse(deformation));
            Json rep;
            const FirstOrderCheck<K> chk = first_order_cocycle_check(F, D);
            rep["first_order_cocycle"] = chk.ok;
            try {
                const TrivializeResult<K> res = trivialize_first_order(F, D);
                rep["trivializable"] = true;
                rep["phi"] = automorphism_json(F, res.phi);
            } catch (const NotCoboundaryOnCore& e) {
                rep["trivializable"] = false;
                rep["reason"] = std::string(e.what());
            }
            return rep.dump();
        });
    }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact window-scale cohomology for the q-deformed Witt Hom-Lie superalgebra";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SlotError>(m, "SlotError", PyExc_ValueError);
    py::register_exception<ReduceError>(m, "ReduceError", PyExc_RuntimeError);

    py::class_<ContextHandle>(m, "Context")
        .def(py::init<const std::string&, const std::string&>(), py::arg("mode") = "sampled",
             py::arg("q") = "2")
        .def("describe", &ContextHandle::describe)
        .def("q_number", &ContextHandle::q_number, py::arg("n"))
        .def("bracket", &ContextHandle::bracket2, py::arg("kind_x"), py::arg("n_x"),
             py::arg("kind_y"), py::arg("n_y"))
        .def("alpha_scale", &ContextHandle::alpha_scale, py::arg("kind"), py::arg("n"))
        .def("jacobi_zero", &ContextHandle::jacobi_zero, py::arg("kind_x"), py::arg("n_x"),
             py::arg("kind_y"), py::arg("n_y"), py::arg("kind_z"), py::arg("n_z"))
        .def("_analyze_sector_json", &ContextHandle::analyze_sector_json, py::arg("parity"),
             py::arg("s"), py::arg("N"), py::arg("N_core"), py::arg("threads") = 1,
             py::arg("certificates") = true)
        .def("_sweep_json", &ContextHandle::sweep_json, py::arg("even"), py::arg("odd"),
             py::arg("s_min"), py::arg("s_max"), py::arg("N"), py::arg("N_core"),
             py::arg("threads") = 1)
        .def("_kernel_json", &ContextHandle::kernel_json, py::arg("parity"), py::arg("s"),
             py::arg("N"), py::arg("N_core"))
        .def("_random_coboundary_json", &ContextHandle::random_coboundary_json, py::arg("parity"),
             py::arg("s"), py::arg("N"), py::arg("N_core"), py::arg("seed"))
        .def("_reduce_json", &ContextHandle::reduce_json, py::arg("cochain_json"), py::arg("N"),
             py::arg("N_core"))
        .def("_first_order_deformation_json", &ContextHandle::first_order_deformation_json,
             py::arg("cochain_json"), py::arg("N"), py::arg("N_core"))
        .def("_deform_check_json", &ContextHandle::deform_check_json, py::arg("deformation_json"));
}
