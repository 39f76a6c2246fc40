#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fuzex/extractor.hpp"
#include "fuzex/field.hpp"
#include "fuzex/games.hpp"
#include "fuzex/mac.hpp"
#include "fuzex/params.hpp"
#include "fuzex/rfe.hpp"
#include "fuzex/rng.hpp"
#include "fuzex/sampler.hpp"
#include "fuzex/serialize.hpp"
#include "fuzex/sources.hpp"
#include "fuzex/srrfe.hpp"

namespace py = pybind11;
using namespace fuzex;

namespace {

// python ints <-> field elements (lambda up to 128 bits)
py::int_ fe_to_int(const FieldElement& a) {
    return (py::int_(a.hi) << py::int_(64)) | py::int_(a.lo);
}

FieldElement fe_from_int(const Field& f, const py::int_& v) {
    py::int_ mask64((uint64_t)~uint64_t{0});
    uint64_t lo = py::cast<uint64_t>(v & mask64);
    uint64_t hi = py::cast<uint64_t>((v >> py::int_(64)) & mask64);
    FieldElement e{lo, hi, uint16_t(f.lambda())};
    if (f.lambda() <= 64 && (hi != 0 || (f.lambda() < 64 && (lo >> f.lambda()) != 0)))
        throw std::invalid_argument("value does not fit in the field width");
    return e;
}

py::bytes to_pybytes(const std::vector<uint8_t>& v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

std::vector<uint8_t> from_pybytes(const py::bytes& b) {
    std::string s = b;
    return std::vector<uint8_t>(s.begin(), s.end());
}

}  // namespace

PYBIND11_MODULE(_fuzex, m) {
    m.doc() = "information-theoretic fuzzy extractors for structured sources";

    py::class_<BitString>(m, "BitString")
        .def(py::init<size_t>(), py::arg("nbits") = 0)
        .def_static("from_string", &BitString::from_string)
        .def_static("from_bytes",
                    [](const py::bytes& b, size_t nbits) {
                        auto v = from_pybytes(b);
                        return BitString::from_bytes(v, nbits);
                    })
        .def("__len__", &BitString::size)
        .def("__getitem__",
             [](const BitString& b, size_t i) {
                 if (i >= b.size()) throw py::index_error();
                 return b.bit(i);
             })
        .def("set_bit", &BitString::set_bit)
        .def("flip_bit", &BitString::flip_bit)
        .def("__xor__", &BitString::operator^)
        .def("__eq__", [](const BitString& a, const BitString& b) { return a == b; })
        .def("__str__", &BitString::to_string)
        .def("__repr__",
             [](const BitString& b) { return "BitString('" + b.to_string() + "')"; })
        .def("hamming_weight", &BitString::hamming_weight)
        .def("to_bytes", [](const BitString& b) { return to_pybytes(b.to_bytes()); })
        .def("concat", &BitString::concat)
        .def("slice", &BitString::slice);

    py::class_<Rng>(m, "Rng")
        .def(py::init<uint64_t>())
        .def("bits", &Rng::bits)
        .def("below", &Rng::below)
        .def("fork", &Rng::fork);

    py::class_<Field>(m, "Field")
        .def(py::init<unsigned>())
        .def_property_readonly("lam", &Field::lambda)
        .def("add", [](const Field& f, const py::int_& a, const py::int_& b) {
            return fe_to_int(f.add(fe_from_int(f, a), fe_from_int(f, b)));
        })
        .def("mul", [](const Field& f, const py::int_& a, const py::int_& b) {
            return fe_to_int(f.mul(fe_from_int(f, a), fe_from_int(f, b)));
        })
        .def("pow", [](const Field& f, const py::int_& a, uint64_t e) {
            return fe_to_int(f.pow(fe_from_int(f, a), e));
        })
        .def("inverse", [](const Field& f, const py::int_& a) {
            return fe_to_int(f.inverse(fe_from_int(f, a)));
        })
        .def("encode_message", [](const Field& f, const BitString& p, uint32_t L) {
            std::vector<py::int_> out;
            for (auto& c : f.encode_message(p, L)) out.push_back(fe_to_int(c));
            return out;
        });

    py::class_<ToeplitzSeed>(m, "ToeplitzSeed")
        .def_readonly("bits", &ToeplitzSeed::bits)
        .def_readonly("m", &ToeplitzSeed::m)
        .def_readonly("nu", &ToeplitzSeed::nu);
    m.def("make_toeplitz_seed", &make_toeplitz_seed);
    m.def("toeplitz_seed_from_bits", &toeplitz_seed_from_bits);
    m.def("extract", &extract, py::arg("w"), py::arg("seed"));
    m.def("lhl_max_output", [](double alpha, double eps) {
        return lhl_max_output((long double)alpha, (long double)eps);
    });
    m.def("lhl_epsilon", [](uint32_t nu, double alpha) {
        return (double)lhl_epsilon(nu, (long double)alpha);
    });

    py::class_<IndexSet>(m, "IndexSet")
        .def(py::init([](std::vector<uint32_t> idx) {
            return IndexSet{std::move(idx)};
        }))
        .def_readonly("indices", &IndexSet::indices);
    m.def("sample_index_set", &sample_index_set);
    m.def("subsample", &subsample);

    py::class_<Crs>(m, "Crs")
        .def_readonly("index_sets", &Crs::index_sets)
        .def_readonly("seed", &Crs::seed);
    m.def("generate_crs", &generate_crs);

    py::enum_<Construction>(m, "Construction")
        .value("C1", Construction::C1)
        .value("C2", Construction::C2);

    py::class_<Params>(m, "Params")
        .def(py::init<>())
        .def_readwrite("n", &Params::n)
        .def_readwrite("m", &Params::m)
        .def_readwrite("ell", &Params::ell)
        .def_readwrite("t", &Params::t)
        .def_readwrite("t_prime", &Params::t_prime)
        .def_readwrite("xi", &Params::xi)
        .def_readwrite("lam", &Params::lambda)
        .def_readwrite("nu", &Params::nu)
        .def_readwrite("L", &Params::L)
        .def_property("alpha",
                      [](const Params& p) { return (double)p.alpha; },
                      [](Params& p, double v) { p.alpha = v; })
        .def_property("sigma",
                      [](const Params& p) { return (double)p.sigma; },
                      [](Params& p, double v) { p.sigma = v; })
        .def_property("eps_prime",
                      [](const Params& p) { return (double)p.eps_prime; },
                      [](Params& p, double v) { p.eps_prime = v; })
        .def_readwrite("N", &Params::N)
        .def_readwrite("eta", &Params::eta)
        .def_readwrite("q_e", &Params::q_e)
        .def_readwrite("q_d", &Params::q_d);

    m.def("finalize_params", &finalize_params);
    m.def("validate", &validate);
    m.def("mac_degree", &mac_degree);
    m.def("correctness_bound", [](const Params& p, Construction c) {
        return (double)correctness_bound(p, c);
    });
    m.def("max_key_length", [](double alpha, uint32_t ell, double sigma, uint32_t t,
                               uint32_t lambda, Construction c) {
        return max_key_length((long double)alpha, ell, (long double)sigma, t, lambda, c);
    });
    m.def("solve_ell", [](uint32_t n, uint32_t mm, uint32_t tp, uint32_t t, double eps) {
        auto r = solve_ell(n, mm, tp, t, (long double)eps);
        return py::make_tuple(r.feasible, r.ell, r.reason);
    });
    m.def("robustness_delta", [](uint64_t qe, uint64_t qd, uint32_t ell, uint32_t lambda,
                                 uint32_t L, double eps) {
        return (double)robustness_delta(qe, qd, ell, lambda, L, (long double)eps);
    });

    py::class_<MacKey>(m, "MacKey");
    m.def("mac_key_from_bits", &mac_key_from_bits);
    m.def("mac_eval", [](const Field& f, const BitString& p, const MacKey& k, uint32_t L) {
        return fe_to_int(mac_eval(f, p, k, L).value);
    });
    m.def("mac_verify",
          [](const Field& f, const BitString& p, const py::int_& tag, const MacKey& k,
             uint32_t L) { return mac_verify(f, p, Tag{fe_from_int(f, tag)}, k, L); });
    m.def("shifted_verify",
          [](const Field& f, const BitString& p2, const py::int_& tag2, const MacKey& k,
             const py::int_& d1, const py::int_& d2, uint32_t L) {
              return shifted_verify(f, p2, Tag{fe_from_int(f, tag2)}, k,
                                    fe_from_int(f, d1), fe_from_int(f, d2), L);
          });

    py::class_<ExtractedKey>(m, "ExtractedKey")
        .def_readonly("bits", &ExtractedKey::bits)
        .def("__eq__",
             [](const ExtractedKey& a, const ExtractedKey& b) { return a == b; });

    py::class_<RfeHelperData>(m, "RfeHelperData");
    py::class_<SrrfeHelperData>(m, "SrrfeHelperData");

    m.def("rfe_gen", &rfe_gen);
    m.def("rfe_rep", &rfe_rep);
    m.def("srrfe_gen", &srrfe_gen);
    m.def("srrfe_rep", &srrfe_rep);

    py::class_<SourceModel>(m, "SourceModel")
        .def_static("uniform", &SourceModel::uniform)
        .def_static("biased", &SourceModel::biased)
        .def_static("block_structured", &SourceModel::block_structured)
        .def("draw", &SourceModel::draw)
        .def("certified_alpha", [](const SourceModel& s, uint32_t mm, uint64_t N) {
            return (double)s.certified_alpha(mm, N);
        });

    py::class_<NoiseModel>(m, "NoiseModel")
        .def_static("random_t", &NoiseModel::random_t)
        .def_static("shift", &NoiseModel::shift);
    m.def("perturb", &perturb);

    // serialization: bytes in, bytes out
    m.def("serialize_helper_c1", [](const RfeHelperData& h, const ToeplitzSeed& z) {
        return to_pybytes(serialize_helper(h, z));
    });
    m.def("parse_helper_c1", [](const py::bytes& b) {
        auto v = from_pybytes(b);
        return parse_helper_c1(v);
    });
    m.def("serialize_helper_c2",
          [](const SrrfeHelperData& h) { return to_pybytes(serialize_helper(h)); });
    m.def("parse_helper_c2", [](const py::bytes& b) {
        auto v = from_pybytes(b);
        return parse_helper_c2(v);
    });
    m.def("serialize_crs", [](const Crs& crs, const Params& p) {
        return to_pybytes(serialize_crs(crs, p));
    });
    m.def("parse_crs", [](const py::bytes& b) {
        auto v = from_pybytes(b);
        return parse_crs(v);
    });
    m.def("serialize_sample",
          [](const BitString& w) { return to_pybytes(serialize_sample(w)); });
    m.def("parse_sample", [](const py::bytes& b) {
        auto v = from_pybytes(b);
        return parse_sample(v);
    });

    py::register_exception<ParseError>(m, "ParseError");
    py::register_exception<DigestMismatchError>(m, "DigestMismatchError");
}
