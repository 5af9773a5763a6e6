#include "dyner/table.hpp"

#include <cstdio>

#include <json.hpp>

namespace dyner {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* ResultTable::csv_header() {
    return "experiment,statistic,n,m,p,beta,lambda,a,A,eps,interval,estimate,stderr,replicas,seed";
}

void ResultTable::write_csv(std::ostream& os) const {
    os << csv_header() << '\n';
    auto put_u = [&](const std::optional<std::uint64_t>& v) {
        if (v) os << *v;
        os << ',';
    };
    auto put_d = [&](const std::optional<double>& v) {
        if (v) os << format_double(*v);
        os << ',';
    };
    for (const auto& r : rows) {
        os << r.experiment << ',' << r.statistic << ',';
        put_u(r.n);
        if (r.m) os << *r.m;
        os << ',';
        put_d(r.p);
        put_d(r.beta);
        put_d(r.lambda);
        put_d(r.a);
        put_d(r.A);
        put_d(r.eps);
        put_u(r.interval);
        put_d(r.estimate);
        put_d(r.stderr_);
        put_u(r.replicas);
        if (r.seed) os << *r.seed;
        os << '\n';
    }
}

std::string ResultTable::to_json_rows() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json o;
        o["experiment"] = r.experiment;
        o["statistic"] = r.statistic;
        if (r.n) o["n"] = *r.n;
        if (r.m) o["m"] = *r.m;
        if (r.p) o["p"] = *r.p;
        if (r.beta) o["beta"] = *r.beta;
        if (r.lambda) o["lambda"] = *r.lambda;
        if (r.a) o["a"] = *r.a;
        if (r.A) o["A"] = *r.A;
        if (r.eps) o["eps"] = *r.eps;
        if (r.interval) o["interval"] = *r.interval;
        if (r.estimate) o["estimate"] = *r.estimate;
        if (r.stderr_) o["stderr"] = *r.stderr_;
        if (r.replicas) o["replicas"] = *r.replicas;
        if (r.seed) o["seed"] = *r.seed;
        arr.push_back(std::move(o));
    }
    return arr.dump(2);
}

}  // namespace dyner
