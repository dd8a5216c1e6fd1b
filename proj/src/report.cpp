#include "qs/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qs/errors.hpp"

namespace qs {

namespace {

std::string fmt_double(double v, const char* spec = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

std::string format_complex(cplx z) {
    std::string re = fmt_double(z.real(), "%.15g");
    if (z.imag() == 0.0) return re;
    std::string im = fmt_double(std::abs(z.imag()), "%.15g");
    return re + (z.imag() < 0.0 ? "-" : "+") + im + "i";
}

cplx parse_complex(const std::string& text) {
    if (text.empty()) throw DomainError("empty complex literal");
    // Plain real?
    {
        std::size_t pos = 0;
        try {
            double re = std::stod(text, &pos);
            if (pos == text.size()) return cplx(re, 0.0);
        } catch (const std::exception&) {
        }
    }
    if (text.back() != 'i') throw DomainError("bad complex literal: " + text);
    std::string body = text.substr(0, text.size() - 1);
    if (body.empty() || body == "+") return cplx(0.0, 1.0);
    if (body == "-") return cplx(0.0, -1.0);
    // Find the sign splitting real and imaginary parts (skip leading sign and
    // exponent signs).
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        char c = body[i];
        if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) {
        // Pure imaginary, e.g. "2.5i".
        std::size_t pos = 0;
        double im = std::stod(body, &pos);
        if (pos != body.size()) throw DomainError("bad complex literal: " + text);
        return cplx(0.0, im);
    }
    std::size_t pos = 0;
    double re = std::stod(body.substr(0, split), &pos);
    if (pos != split) throw DomainError("bad complex literal: " + text);
    std::string im_part = body.substr(split);
    double im;
    if (im_part == "+")
        im = 1.0;
    else if (im_part == "-")
        im = -1.0;
    else {
        pos = 0;
        im = std::stod(im_part, &pos);
        if (pos != im_part.size()) throw DomainError("bad complex literal: " + text);
    }
    return cplx(re, im);
}

void Report::add(std::string id, std::string inputs, double residual, double tolerance) {
    ReportRecord rec;
    rec.identity_id = std::move(id);
    rec.inputs = std::move(inputs);
    rec.residual = residual;
    rec.tolerance = tolerance;
    rec.pass = residual < tolerance;
    records.push_back(std::move(rec));
}

bool Report::all_pass() const {
    for (const auto& r : records)
        if (!r.pass) return false;
    return true;
}

int Report::passed() const {
    int k = 0;
    for (const auto& r : records)
        if (r.pass) ++k;
    return k;
}

std::string Report::to_text() const {
    std::string out = "# qseries-report v1 suite=" + suite + " q=" + format_complex(q) +
                      " seed=" + std::to_string(seed) + " samples=" + std::to_string(samples) +
                      " tolerance_scale=" + fmt_double(tolerance_scale) +
                      " generator=splitmix64\n";
    for (const auto& r : records) {
        out += "identity_id=" + r.identity_id + " inputs=" + r.inputs +
               " residual=" + fmt_double(r.residual) + " tolerance=" + fmt_double(r.tolerance) +
               " pass=" + (r.pass ? "true" : "false") + "\n";
    }
    return out;
}

std::string Report::summary() const {
    int k = passed();
    int n = static_cast<int>(records.size());
    if (k == n) return "PASS " + std::to_string(k) + "/" + std::to_string(n);
    return "FAIL " + std::to_string(n - k) + "/" + std::to_string(n);
}

}  // namespace qs
