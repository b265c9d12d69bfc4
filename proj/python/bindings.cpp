#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "d2d/channel.hpp"
#include "d2d/commands.hpp"
#include "d2d/config.hpp"

namespace py = pybind11;
using namespace d2d;

namespace {

py::dict evaluation_dict(const ExperimentConfig& cfg, bool with_ci) {
    Evaluation ev = evaluate(cfg.model, cfg.model.make_bank(), with_ci);
    py::dict d;
    d["ec_n1"] = ev.ec_n1.ec;
    d["ec_n2"] = ev.ec_n2.ec;
    d["lambda_n1"] = ev.ec_n1.lambda_plus;
    d["lambda_n2"] = ev.ec_n2.lambda_plus;
    d["b_n1"] = ev.spec_n1.b;
    d["b_n2"] = ev.spec_n2.b;
    d["mode_mass"] = ev.mass;
    d["truncated"] = ev.truncated;
    if (ev.truncated) {
        d["closed_n1"] = ev.closed_n1;
        d["closed_n2"] = ev.closed_n2;
        d["unpaired_n2"] = ev.unpaired_n2;
    }
    if (with_ci) {
        d["ci_n1"] = ev.ci_n1;
        d["ci_n2"] = ev.ci_n2;
    }
    d["clamped"] = ev.clamped;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Effective capacity of HARQ device-to-device links";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<ExperimentConfig>(m, "Config")
        .def(py::init(&default_config))
        .def_static("from_file", [](const std::string& path) { return load_config(path); })
        .def_static("from_string", [](const std::string& text) { return parse_config(text); })
        .def("set", [](ExperimentConfig& c, const std::string& key, py::object value) {
            set_option(c, key, py::str(value).cast<std::string>());
            return &c;
        }, py::return_value_policy::reference_internal)
        .def("get", [](const ExperimentConfig& c, const std::string& key) -> py::object {
            for (const auto& [k, v] : c.resolved)
                if (k == key) return py::str(v);
            throw ConfigError("unknown key '" + key + "'");
        })
        .def("echo", &config_echo)
        .def_property_readonly("seed", [](const ExperimentConfig& c) { return c.seed; });

    m.def("keys", [] {
        py::list out;
        for (const auto& d : option_docs()) out.append(py::make_tuple(d.key, d.default_value, d.description));
        return out;
    });

    m.def("q_function", &q_function);
    m.def("pathloss_db", &pathloss_db, py::arg("distance_km"));
    m.def("decoding_error", [](std::vector<double> gammas, double l, double r) {
        return decoding_error_conditional(gammas, l, r);
    }, py::arg("gammas"), py::arg("block_len"), py::arg("rate"));
    m.def("perron_root", [](const std::vector<double>& b) { return perron_root(b); }, py::arg("b"));
    m.def("quadratic_root", &quadratic_root);

    m.def("detection", [](std::array<double, 3> losses_db, double sigma, py::object c_ab, py::object c_bc) {
        ThresholdSpec spec;
        if (!c_ab.is_none() || !c_bc.is_none()) {
            if (c_ab.is_none() || c_bc.is_none()) throw ConfigError("give both c_ab and c_bc or neither");
            spec = {ThresholdRule::fixed, c_ab.cast<double>(), c_bc.cast<double>()};
        }
        DetectionProfile d = map_to_hypotheses(losses_db, sigma, spec);
        py::dict out;
        out["pd"] = d.pd;
        out["pe"] = d.pe;
        out["thresholds"] = py::make_tuple(d.thresholds.c_ab, d.thresholds.c_bc);
        out["cross"] = d.cross;
        return out;
    }, py::arg("losses_db"), py::arg("sigma"), py::arg("c_ab") = py::none(), py::arg("c_bc") = py::none());

    m.def("evaluate", &evaluation_dict, py::arg("config"), py::arg("with_ci") = false);

    m.def("simulate_ec", [](const ExperimentConfig& cfg, const std::string& queue) {
        SimConfig sc = cfg.sim;
        if (queue == "n1") sc.queue = QueueModel::n1;
        else if (queue == "n2") sc.queue = QueueModel::n2;
        else throw ConfigError("queue must be n1 or n2");
        EmpiricalEC e;
        {
            py::gil_scoped_release nogil;
            auto det = map_to_hypotheses(cfg.model.budget.first_hop_db(), cfg.model.sigma, cfg.model.thresholds);
            ServicePaths sp = simulate_service_paths(cfg.model.sys, cfg.model.budget, det, cfg.model.prior, sc);
            e = empirical_ec(sp.total, sc.num_blocks, cfg.model.sys.theta, sc.bootstrap, derive_seed(sc.seed, 1));
        }
        py::dict out;
        out["ec"] = e.ec;
        out["ci"] = py::make_tuple(e.ci_lo, e.ci_hi);
        return out;
    }, py::arg("config"), py::arg("queue") = "n1");

    m.def("cost_n1", [](double r, double phi, double vartheta, double eps_ac, double l, double theta) {
        return cost_n1(r, {phi, vartheta, eps_ac, l, theta});
    });
    m.def("gradient_n1", [](double r, double phi, double vartheta, double eps_ac, double l, double theta) {
        return analytic_gradient_n1(r, {phi, vartheta, eps_ac, l, theta});
    });

    m.def("run", [](const std::string& command, const ExperimentConfig& cfg) {
        CommandResult res;
        {
            py::gil_scoped_release nogil;
            res = run_command(command, cfg);
        }
        py::dict tables;
        for (const auto& o : res.outputs) tables[py::str(o.name)] = o.table.body();
        py::dict out;
        out["exit_code"] = res.exit_code;
        out["tables"] = tables;
        out["summary"] = res.summary;
        out["warnings"] = res.warnings;
        return out;
    }, py::arg("command"), py::arg("config"));
}
