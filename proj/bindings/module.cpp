#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wgan/confidence.hpp"
#include "wgan/data.hpp"
#include "wgan/gan.hpp"
#include "wgan/network.hpp"
#include "wgan/transport.hpp"

namespace py = pybind11;
using namespace wgan;

namespace {

Network init_network(const Architecture& arch, std::uint64_t seed) {
  Rng rng(seed);
  return Network::init(arch, rng);
}

LatentSpec make_latent(const std::string& kind, int dim) {
  return LatentSpec{parse_latent_kind(kind), dim};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wasserstein GAN training with gradient penalty, exact transport "
            "evaluation and quantile confidence intervals";

  py::class_<Architecture>(m, "Architecture")
      .def(py::init([](int depth, std::vector<int> widths, std::optional<double> bound) {
             Architecture a(depth, std::move(widths), bound);
             a.validate();
             return a;
           }),
           py::arg("depth"), py::arg("widths"), py::arg("output_bound") = std::nullopt)
      .def_static("mlp", &Architecture::mlp, py::arg("input_dim"), py::arg("hidden_layers"),
                  py::arg("hidden_width"), py::arg("output_dim"))
      .def_readonly("depth", &Architecture::depth)
      .def_readonly("widths", &Architecture::widths)
      .def_readonly("output_bound", &Architecture::output_bound);

  py::class_<Network>(m, "Network")
      .def_static("init", &init_network, py::arg("arch"), py::arg("seed"))
      .def_static("load", &Network::load, py::arg("path"))
      .def("save", &Network::save, py::arg("path"))
      .def("forward", &Network::forward, py::arg("x"))
      .def("forward_batch",
           [](const Network& net, const Eigen::MatrixXd& rows) {
             return Eigen::MatrixXd(net.forward_batch(rows.transpose()).transpose());
           },
           py::arg("rows"), "Evaluate one sample per row.")
      .def("input_gradient", &Network::input_gradient, py::arg("x"))
      .def("sparsity", &Network::sparsity, py::arg("threshold"))
      .def("parameter_count", &Network::parameter_count)
      .def("max_abs_parameter", &Network::max_abs_parameter)
      .def_property_readonly("arch", &Network::arch)
      .def("__eq__", [](const Network& a, const Network& b) { return a == b; });

  py::class_<WarmupSchedule>(m, "WarmupSchedule")
      .def(py::init([](int initial_iters, int every, int critic_iters) {
             return WarmupSchedule{initial_iters, every, critic_iters};
           }),
           py::arg("initial_iters") = 25, py::arg("every") = 100,
           py::arg("critic_iters") = 100)
      .def_readwrite("initial_iters", &WarmupSchedule::initial_iters)
      .def_readwrite("every", &WarmupSchedule::every)
      .def_readwrite("critic_iters", &WarmupSchedule::critic_iters);

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("penalty_weight", &TrainConfig::penalty_weight)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("n_critic", &TrainConfig::n_critic)
      .def_readwrite("beta1", &TrainConfig::beta1)
      .def_readwrite("beta2", &TrainConfig::beta2)
      .def_readwrite("adam_epsilon", &TrainConfig::adam_epsilon)
      .def_readwrite("weight_decay", &TrainConfig::weight_decay)
      .def_readwrite("decay_biases", &TrainConfig::decay_biases)
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("warmup", &TrainConfig::warmup)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("conditional", &TrainConfig::conditional)
      .def_property(
          "latent",
          [](const TrainConfig& c) {
            return py::make_tuple(latent_kind_name(c.latent.kind), c.latent.dim);
          },
          [](TrainConfig& c, py::tuple t) {
            c.latent = make_latent(t[0].cast<std::string>(), t[1].cast<int>());
          });

  py::class_<HistoryRecord>(m, "HistoryRecord")
      .def_readonly("iteration", &HistoryRecord::iteration)
      .def_readonly("epoch", &HistoryRecord::epoch)
      .def_readonly("critic_iters", &HistoryRecord::critic_iters)
      .def_readonly("critic_objective", &HistoryRecord::critic_objective)
      .def_readonly("penalty", &HistoryRecord::penalty)
      .def_readonly("generator_objective", &HistoryRecord::generator_objective)
      .def_readonly("latent_draws", &HistoryRecord::latent_draws);

  py::class_<TrainedModel>(m, "TrainedModel")
      .def_readonly("generator", &TrainedModel::generator)
      .def_readonly("critic", &TrainedModel::critic)
      .def_readonly("history", &TrainedModel::history);

  py::class_<Interval>(m, "Interval")
      .def_readonly("lower", &Interval::lower)
      .def_readonly("upper", &Interval::upper)
      .def_readonly("alpha", &Interval::alpha)
      .def("contains", &Interval::contains, py::arg("t"))
      .def("__repr__", [](const Interval& iv) {
        return "Interval(" + std::to_string(iv.lower) + ", " + std::to_string(iv.upper) + "]";
      });

  py::class_<CoverageReport>(m, "CoverageReport")
      .def_readonly("total", &CoverageReport::total)
      .def_readonly("covered", &CoverageReport::covered)
      .def_readonly("rate", &CoverageReport::rate)
      .def_property_readonly("flags", [](const CoverageReport& r) {
        std::vector<bool> out(r.flags.begin(), r.flags.end());
        return out;
      });

  py::class_<TransportEstimate>(m, "TransportEstimate")
      .def_readonly("mean", &TransportEstimate::mean)
      .def_readonly("std", &TransportEstimate::std)
      .def_readonly("repetitions", &TransportEstimate::repetitions)
      .def_readonly("batch_size", &TransportEstimate::batch_size);

  m.def("exact_w1", &exact_w1, py::arg("a"), py::arg("b"),
        "Exact 1-Wasserstein distance between equal-size point clouds (rows).");
  m.def("brute_force_w1", &brute_force_w1, py::arg("a"), py::arg("b"));

  m.def("empirical_cdf",
        [](const std::vector<double>& samples, double x) {
          return empirical_cdf(samples, x);
        },
        py::arg("samples"), py::arg("x"));
  m.def("quantile_interval",
        [](const std::vector<double>& samples, double alpha) {
          return quantile_interval(samples, alpha);
        },
        py::arg("samples"), py::arg("alpha"));
  m.def("coverage",
        [](const std::vector<Interval>& intervals, const std::vector<double>& truths) {
          return coverage(std::span<const Interval>(intervals), truths);
        },
        py::arg("intervals"), py::arg("truths"));

  m.def("sample_latent",
        [](const std::string& kind, int dim, int count, std::uint64_t seed) {
          Rng rng(seed);
          return sample_latent(make_latent(kind, dim), count, rng);
        },
        py::arg("kind"), py::arg("dim"), py::arg("count"), py::arg("seed"));
  m.def("synth_unconditional",
        [](int n, std::uint64_t seed) {
          Rng rng(seed);
          return synth_unconditional(n, rng).x;
        },
        py::arg("n"), py::arg("seed"));
  m.def("synth_conditional",
        [](int n, std::uint64_t seed) {
          Rng rng(seed);
          PairedDataset d = synth_conditional(n, rng);
          return py::make_tuple(d.x, *d.y);
        },
        py::arg("n"), py::arg("seed"));

  m.def("train",
        [](const TrainConfig& config, const Eigen::MatrixXd& x,
           std::optional<Eigen::MatrixXd> y, const Architecture& gen_arch,
           const Architecture& critic_arch) {
          PairedDataset data;
          data.x = x;
          data.y = std::move(y);
          data.provenance = "caller";
          return train(config, data, gen_arch, critic_arch);
        },
        py::arg("config"), py::arg("x"), py::arg("y"), py::arg("gen_arch"),
        py::arg("critic_arch"),
        "Train generator and critic on samples (rows of x, optional rows of y).");

  m.def("generate",
        [](const Network& generator, const std::string& kind, int dim, int count,
           std::uint64_t seed, std::optional<Eigen::MatrixXd> cond) {
          Rng rng(seed);
          return generate(generator, make_latent(kind, dim), count, rng, cond);
        },
        py::arg("generator"), py::arg("latent_kind"), py::arg("latent_dim"),
        py::arg("count"), py::arg("seed"), py::arg("cond") = std::nullopt);
}
