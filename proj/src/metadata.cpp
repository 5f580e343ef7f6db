#include "autovr/metadata.hpp"

#include <cstring>
#include <unordered_map>

namespace autovr {
namespace {

constexpr char kMagic[4] = {'A', 'V', 'R', 'M'};

// Little-endian cursor over the raw image.
class Reader {
public:
    Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

    std::uint8_t u8(const char* what) {
        need(1, what);
        return bytes_[pos_++];
    }

    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(bytes_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }

    std::uint64_t u64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(bytes_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }

    std::string str(std::size_t n, const char* what) {
        need(n, what);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }

    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n, const char* what) {
        if (pos_ + n > bytes_.size())
            throw TruncatedImageError("image truncated reading " + std::string(what) +
                                      " at byte " + std::to_string(pos_));
    }

    const std::vector<std::uint8_t>& bytes_;
    std::size_t pos_ = 0;
};

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out_.push_back(std::uint8_t(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out_.push_back(std::uint8_t(v >> (8 * i)));
    }
    void str(const std::string& s) {
        out_.insert(out_.end(), s.begin(), s.end());
    }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

} // namespace

void MetadataImage::validate() const {
    auto check_string = [&](std::uint32_t idx, const char* kind, std::size_t rec) {
        if (idx >= strings.size())
            throw IndexOutOfBoundsError(std::string(kind) + " record " + std::to_string(rec) +
                                            ": string index " + std::to_string(idx) +
                                            " out of bounds (" + std::to_string(strings.size()) + ")",
                                        rec);
    };
    auto check_class = [&](std::uint32_t idx, const char* kind, std::size_t rec) {
        if (idx >= classes.size())
            throw IndexOutOfBoundsError(std::string(kind) + " record " + std::to_string(rec) +
                                            ": class index " + std::to_string(idx) +
                                            " out of bounds (" + std::to_string(classes.size()) + ")",
                                        rec);
    };

    for (std::size_t i = 0; i < classes.size(); ++i) {
        const ClassRecord& c = classes[i];
        check_string(c.name, "class", i);
        check_string(c.ns, "class", i);
        if (c.parent != kNoParent) check_class(c.parent, "class", i);
        for (std::uint32_t iface : c.interfaces) check_string(iface, "class", i);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        check_string(fields[i].name, "field", i);
        check_class(fields[i].owner, "field", i);
        check_string(fields[i].type, "field", i);
    }
    std::unordered_map<std::uint64_t, std::size_t> seen;
    for (std::size_t i = 0; i < methods.size(); ++i) {
        check_string(methods[i].name, "method", i);
        check_class(methods[i].owner, "method", i);
        auto [it, fresh] = seen.emplace(methods[i].offset, i);
        if (!fresh)
            throw OffsetCollisionError("method records " + std::to_string(it->second) + " and " +
                                           std::to_string(i) + " share offset " +
                                           std::to_string(methods[i].offset),
                                       methods[i].offset);
    }
}

std::string MetadataImage::qualified_name(const MethodRecord& m) const {
    const ClassRecord& c = classes.at(m.owner);
    const std::string& ns = strings.at(c.ns);
    std::string qualified = ns.empty() ? "" : ns + ".";
    qualified += strings.at(c.name);
    qualified += "$$";
    qualified += strings.at(m.name);
    return qualified;
}

MetadataImage parse_metadata(const std::vector<std::uint8_t>& bytes) {
    Reader r(bytes);
    std::string magic = r.str(4, "magic");
    if (std::memcmp(magic.data(), kMagic, 4) != 0)
        throw BadMagicError("bad magic '" + magic + "', expected 'AVRM'");

    MetadataImage img;
    img.version = r.u32("version");

    std::uint32_t nstrings = r.u32("string table count");
    img.strings.reserve(nstrings);
    for (std::uint32_t i = 0; i < nstrings; ++i) {
        std::uint32_t len = r.u32("string length");
        img.strings.push_back(r.str(len, "string bytes"));
    }

    std::uint32_t nclasses = r.u32("class record count");
    img.classes.reserve(nclasses);
    for (std::uint32_t i = 0; i < nclasses; ++i) {
        ClassRecord c;
        c.name = r.u32("class name index");
        c.ns = r.u32("class namespace index");
        c.parent = r.u32("class parent index");
        std::uint32_t nifaces = r.u32("class interface count");
        c.interfaces.reserve(nifaces);
        for (std::uint32_t k = 0; k < nifaces; ++k)
            c.interfaces.push_back(r.u32("class interface index"));
        img.classes.push_back(std::move(c));
    }

    std::uint32_t nfields = r.u32("field record count");
    img.fields.reserve(nfields);
    for (std::uint32_t i = 0; i < nfields; ++i) {
        FieldRecord f;
        f.name = r.u32("field name index");
        f.owner = r.u32("field owner index");
        f.type = r.u32("field type index");
        f.is_static = r.u8("field static flag") != 0;
        img.fields.push_back(f);
    }

    std::uint32_t nmethods = r.u32("method record count");
    img.methods.reserve(nmethods);
    for (std::uint32_t i = 0; i < nmethods; ++i) {
        MethodRecord m;
        m.name = r.u32("method name index");
        m.owner = r.u32("method owner index");
        m.offset = r.u64("method offset");
        m.param_count = r.u32("method param count");
        m.reflection_only = r.u8("method reflection flag") != 0;
        img.methods.push_back(m);
    }

    if (!r.at_end())
        throw TruncatedImageError("trailing bytes after method section at byte " +
                                  std::to_string(r.pos()));

    img.validate();
    return img;
}

std::vector<std::uint8_t> encode_metadata(const MetadataImage& image) {
    Writer w;
    w.str(std::string(kMagic, 4));
    w.u32(image.version);

    w.u32(std::uint32_t(image.strings.size()));
    for (const std::string& s : image.strings) {
        w.u32(std::uint32_t(s.size()));
        w.str(s);
    }

    w.u32(std::uint32_t(image.classes.size()));
    for (const ClassRecord& c : image.classes) {
        w.u32(c.name);
        w.u32(c.ns);
        w.u32(c.parent);
        w.u32(std::uint32_t(c.interfaces.size()));
        for (std::uint32_t iface : c.interfaces) w.u32(iface);
    }

    w.u32(std::uint32_t(image.fields.size()));
    for (const FieldRecord& f : image.fields) {
        w.u32(f.name);
        w.u32(f.owner);
        w.u32(f.type);
        w.u8(f.is_static ? 1 : 0);
    }

    w.u32(std::uint32_t(image.methods.size()));
    for (const MethodRecord& m : image.methods) {
        w.u32(m.name);
        w.u32(m.owner);
        w.u64(m.offset);
        w.u32(m.param_count);
        w.u8(m.reflection_only ? 1 : 0);
    }

    return w.take();
}

const MethodEntry* GlobalFunctionTable::lookup(std::uint64_t offset) const {
    auto it = entries_.find(offset);
    return it == entries_.end() ? nullptr : &it->second;
}

void GlobalFunctionTable::insert(std::uint64_t offset, MethodEntry entry) {
    entries_[offset] = std::move(entry);
}

GlobalFunctionTable build_gft(const MetadataImage& image,
                              const std::vector<DynamicMethod>& dynamic_methods) {
    image.validate();
    GlobalFunctionTable gft;

    for (const MethodRecord& m : image.methods) {
        MethodEntry e;
        e.qualified_name = image.qualified_name(m);
        // Static records only know the arity.
        e.params.assign(m.param_count, "System.Object");
        e.source = MethodSource::Static;
        gft.insert(m.offset, std::move(e));
    }

    for (const DynamicMethod& d : dynamic_methods) {
        if (const MethodEntry* existing = gft.lookup(d.offset)) {
            if (existing->qualified_name != d.qualified_name)
                throw OffsetCollisionError("offset " + std::to_string(d.offset) +
                                               " claimed by '" + existing->qualified_name +
                                               "' (static) and '" + d.qualified_name +
                                               "' (dynamic)",
                                           d.offset);
            MethodEntry e;
            e.qualified_name = d.qualified_name;
            e.params = d.params; // typed signature wins
            e.source = MethodSource::Both;
            gft.insert(d.offset, std::move(e));
        } else {
            MethodEntry e;
            e.qualified_name = d.qualified_name;
            e.params = d.params;
            e.source = MethodSource::Dynamic;
            gft.insert(d.offset, std::move(e));
        }
    }

    return gft;
}

} // namespace autovr
