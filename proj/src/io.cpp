#include "kgbound/io.hpp"

#include <cstdio>
#include <fstream>

#include "kgbound/error.hpp"

namespace kgbound {

void write_then_rename(const std::filesystem::path& path, const std::string& text)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(ErrorCode::io_error, "cannot open " + tmp.string());
        }
        out << text;
        if (!out.flush()) {
            throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::io_error, "cannot rename onto " + path.string());
    }
}

std::string format_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace kgbound
