#include "metriclab/fieldio.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace metriclab {

namespace {

constexpr int32_t kMagic = 0x314C464D;  // "MLF1"

void put_i32(std::ostream& os, int32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }

int32_t get_i32(std::istream& is) {
    int32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    if (!is) throw numeric_error("truncated field file (header)");
    return v;
}

}  // namespace

void write_field_binary(const FieldStorage& f, std::ostream& os) {
    const ChartSpec& c = f.chart();
    put_i32(os, kMagic);
    put_i32(os, c.dim);
    for (int a = 0; a < c.dim; ++a) put_i32(os, c.resolution[a]);
    put_i32(os, f.ncomp());
    auto raw = f.raw();
    os.write(reinterpret_cast<const char*>(raw.data()),
             static_cast<std::streamsize>(raw.size() * sizeof(double)));
}

void write_field_binary(const FieldStorage& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw numeric_error("cannot open " + path + " for writing");
    write_field_binary(f, os);
}

RawField read_field_binary(std::istream& is) {
    if (get_i32(is) != kMagic) throw numeric_error("not a field file (bad magic)");
    RawField r;
    r.dim = get_i32(is);
    if (r.dim < 2 || r.dim > kMaxDim) throw numeric_error("field file: bad dimension");
    int64_t nodes = 1;
    for (int a = 0; a < r.dim; ++a) {
        r.resolution[a] = get_i32(is);
        if (r.resolution[a] < 1) throw numeric_error("field file: bad resolution");
        nodes *= r.resolution[a];
    }
    r.ncomp = get_i32(is);
    if (r.ncomp < 1 || r.ncomp > 256) throw numeric_error("field file: bad component count");
    r.values.resize(static_cast<size_t>(r.ncomp) * nodes);
    is.read(reinterpret_cast<char*>(r.values.data()),
            static_cast<std::streamsize>(r.values.size() * sizeof(double)));
    if (!is) throw numeric_error("truncated field file (body)");
    return r;
}

RawField read_field_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw numeric_error("cannot open " + path);
    return read_field_binary(is);
}

void write_field_csv(const FieldStorage& f, std::ostream& os) {
    const ChartSpec& c = f.chart();
    for (int a = 0; a < c.dim; ++a) os << "i" << a << ",";
    for (int a = 0; a < c.dim; ++a) os << "x" << a << ",";
    for (int k = 0; k < f.ncomp(); ++k) os << "c" << k << (k + 1 < f.ncomp() ? "," : "\n");
    char buf[40];
    for (int64_t node = 0; node < f.nodes(); ++node) {
        auto idx = c.unravel(node);
        auto x = c.coords(node);
        for (int a = 0; a < c.dim; ++a) os << idx[a] << ",";
        for (int a = 0; a < c.dim; ++a) {
            std::snprintf(buf, sizeof buf, "%.17g", x[a]);
            os << buf << ",";
        }
        for (int k = 0; k < f.ncomp(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", f.value(k, node));
            os << buf << (k + 1 < f.ncomp() ? "," : "\n");
        }
    }
}

void write_field_csv(const FieldStorage& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw numeric_error("cannot open " + path + " for writing");
    write_field_csv(f, os);
}

}  // namespace metriclab
