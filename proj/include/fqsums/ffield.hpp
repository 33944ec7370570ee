/*
   Copyright 2026 The fqsums Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FQSUMS_FFIELD_HPP
#define FQSUMS_FFIELD_HPP

#include <compare>
#include <cstdint>
#include <iterator>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fqs {

class FieldCtx;
class ExtCtx;

/// A field element: its coefficient vector over the next-lower base, packed
/// little-endian into a single integer code (digit i is the coefficient of
/// the i-th power of the generating root), tagged with the id of its field.
struct FqElem {
    std::uint64_t code = 0;
    std::uint32_t field = 0;

    friend bool operator==(const FqElem&, const FqElem&) = default;
    friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

/// Common interface of k = F_q and of its extensions k_r. Fields are
/// immutable after construction and shared through shared_ptr.
///
/// Two layers of arithmetic are exposed: the checked FqElem operations,
/// which reject elements of other fields with CtxMismatch, and the raw_*
/// operations on bare codes used by the enumeration loops.
class Field {
   public:
    virtual ~Field() = default;
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    std::uint32_t id() const noexcept { return id_; }
    std::uint64_t characteristic() const noexcept { return p_; }
    /// Number of elements.
    std::uint64_t size() const noexcept { return size_; }
    /// Degree over the immediate base (F_p for k, k for k_r).
    unsigned degree() const noexcept { return degree_; }
    /// Size of the immediate base: the radix of element codes.
    std::uint64_t radix() const noexcept { return radix_; }
    /// The field k at the bottom of the tower (k itself for a FieldCtx).
    virtual const FieldCtx& ground() const noexcept = 0;

    FqElem zero() const noexcept { return {0, id_}; }
    FqElem one() const noexcept { return {1, id_}; }
    FqElem element(std::uint64_t code) const;
    FqElem from_int(std::int64_t value) const;
    FqElem from_digits(std::span<const std::uint64_t> digits) const;
    std::vector<std::uint64_t> digits(FqElem x) const;

    bool contains(FqElem x) const noexcept { return x.field == id_ && x.code < size_; }
    void check(FqElem x) const;

    FqElem add(FqElem a, FqElem b) const;
    FqElem sub(FqElem a, FqElem b) const;
    FqElem neg(FqElem a) const;
    FqElem mul(FqElem a, FqElem b) const;
    FqElem inv(FqElem a) const;
    FqElem div(FqElem a, FqElem b) const;
    FqElem pow(FqElem a, std::uint64_t e) const;
    /// a^e for a signed exponent; negative powers need a != 0.
    FqElem pow_signed(FqElem a, std::int64_t e) const;

    template <class Rng>
    FqElem random(Rng& rng) const {
        std::uniform_int_distribution<std::uint64_t> dist(0, size_ - 1);
        return {dist(rng), id_};
    }
    template <class Rng>
    FqElem random_nonzero(Rng& rng) const {
        std::uniform_int_distribution<std::uint64_t> dist(1, size_ - 1);
        return {dist(rng), id_};
    }

    virtual std::uint64_t raw_add(std::uint64_t a, std::uint64_t b) const noexcept = 0;
    virtual std::uint64_t raw_sub(std::uint64_t a, std::uint64_t b) const noexcept = 0;
    virtual std::uint64_t raw_neg(std::uint64_t a) const noexcept = 0;
    virtual std::uint64_t raw_mul(std::uint64_t a, std::uint64_t b) const noexcept = 0;
    virtual std::uint64_t raw_inv(std::uint64_t a) const;
    std::uint64_t raw_pow(std::uint64_t a, std::uint64_t e) const noexcept;
    std::uint64_t raw_from_int(std::int64_t value) const noexcept;

    /// Decimal residue for prime fields, "[c0 c1 ...]" otherwise, recursing
    /// into the base for towers.
    virtual std::string format_code(std::uint64_t code) const = 0;
    std::string format(FqElem x) const;
    /// Inverse of format(); a bare base-field literal is embedded.
    FqElem parse(std::string_view text) const;

   protected:
    Field(std::uint64_t p, std::uint64_t radix, unsigned degree, std::uint64_t size);
    virtual std::uint64_t parse_code(std::string_view& text) const = 0;
    friend class ExtCtx;

    std::uint32_t id_;
    std::uint64_t p_;
    std::uint64_t radix_;
    unsigned degree_;
    std::uint64_t size_;
};

/// The field k = F_p[X]/(m(X)) of q = p^s elements.
class FieldCtx final : public Field {
   public:
    /// Fields up to this size keep log/antilog tables.
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 22;

    std::uint64_t p() const noexcept { return p_; }
    unsigned s() const noexcept { return degree_; }
    std::uint64_t q() const noexcept { return size_; }
    /// Monic modulus over F_p as residues m_0..m_s; empty for prime fields.
    const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }
    FqElem generator() const noexcept { return {generator_, id_}; }
    const FieldCtx& ground() const noexcept override { return *this; }

    /// Index i in [0, q-2] with generator^i = x. Requires q <= kTableLimit.
    std::uint64_t dlog(FqElem x) const;
    /// Tr_{k/F_p}(x) as a residue in [0, p).
    std::uint64_t trace_to_prime(FqElem x) const;
    std::uint64_t raw_trace_to_prime(std::uint64_t x) const noexcept;
    /// The unique y with y^p = x.
    FqElem pth_root(FqElem x) const;

    std::uint64_t raw_add(std::uint64_t a, std::uint64_t b) const noexcept override;
    std::uint64_t raw_sub(std::uint64_t a, std::uint64_t b) const noexcept override;
    std::uint64_t raw_neg(std::uint64_t a) const noexcept override;
    std::uint64_t raw_mul(std::uint64_t a, std::uint64_t b) const noexcept override;
    std::uint64_t raw_inv(std::uint64_t a) const override;
    std::string format_code(std::uint64_t code) const override;

    // Use make_field().
    FieldCtx(std::uint64_t p, unsigned s, std::vector<std::uint64_t> modulus);

   protected:
    std::uint64_t parse_code(std::string_view& text) const override;

   private:
    friend std::shared_ptr<const FieldCtx> make_field(std::uint64_t, unsigned, std::uint64_t);
    friend class ExtCtx;
    void finish(std::uint64_t seed);
    void build_tables() const;
    std::uint64_t poly_mul(std::uint64_t a, std::uint64_t b) const noexcept;

    std::vector<std::uint64_t> modulus_;
    std::uint64_t generator_ = 1;
    std::vector<std::uint64_t> trace_form_;
    bool fast_mul_ = false;
    bool use_tables_ = false;

    mutable std::once_flag tables_once_;
    mutable std::vector<std::uint32_t> log_;
    mutable std::vector<std::uint32_t> exp_;
};

/// k_r = k[Y]/(m_r(Y)), an extension of degree r of a FieldCtx.
class ExtCtx final : public Field {
   public:
    const FieldCtx& base() const noexcept { return *base_; }
    const std::shared_ptr<const FieldCtx>& base_ptr() const noexcept { return base_; }
    unsigned r() const noexcept { return degree_; }
    std::uint64_t q() const noexcept { return base_->size(); }
    /// Monic modulus over k as codes of k, m_0..m_r.
    const std::vector<std::uint64_t>& modulus_r() const noexcept { return modulus_; }
    FqElem generator_r() const noexcept { return {generator_, id_}; }
    const FieldCtx& ground() const noexcept override { return *base_; }

    FqElem embed(FqElem a) const;
    bool in_base(FqElem x) const noexcept { return contains(x) && x.code < base_->size(); }
    /// Inverse of embed(); throws InvalidArgument when x is not in k.
    FqElem project(FqElem x) const;

    /// x -> x^q.
    FqElem frobenius(FqElem x) const;
    std::uint64_t raw_frobenius(std::uint64_t x) const noexcept;
    std::uint64_t raw_trace(std::uint64_t x) const noexcept;
    std::uint64_t raw_norm(std::uint64_t x) const noexcept;

    std::uint64_t raw_add(std::uint64_t a, std::uint64_t b) const noexcept override;
    std::uint64_t raw_sub(std::uint64_t a, std::uint64_t b) const noexcept override;
    std::uint64_t raw_neg(std::uint64_t a) const noexcept override;
    std::uint64_t raw_mul(std::uint64_t a, std::uint64_t b) const noexcept override;
    std::string format_code(std::uint64_t code) const override;

    // Use make_extension().
    ExtCtx(std::shared_ptr<const FieldCtx> base, unsigned r, std::vector<std::uint64_t> modulus);

   protected:
    std::uint64_t parse_code(std::string_view& text) const override;

   private:
    friend std::shared_ptr<const ExtCtx> make_extension(std::shared_ptr<const FieldCtx>, unsigned,
                                                        std::uint64_t);
    void finish(std::uint64_t seed);

    std::shared_ptr<const FieldCtx> base_;
    std::vector<std::uint64_t> modulus_;
    std::uint64_t generator_ = 1;
    std::uint64_t norm_exponent_ = 1;
    // digits of Y^j under x -> x^q, row j
    std::vector<std::uint64_t> frobenius_rows_;
    std::vector<std::uint64_t> trace_form_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Builds k = F_{p^s}; the irreducible modulus and generator are found by a
/// search driven by `seed`, so equal arguments give identical fields.
std::shared_ptr<const FieldCtx> make_field(std::uint64_t p, unsigned s, std::uint64_t seed = 1);

/// Builds k_r over `base`. r = 1 gives a copy of k with modulus Y.
std::shared_ptr<const ExtCtx> make_extension(std::shared_ptr<const FieldCtx> base, unsigned r,
                                             std::uint64_t seed = 1);

/// Tr_{k_r/k}(x) = sum of x^{q^i}, i < r, as an element of k.
FqElem trace(FqElem x, const ExtCtx& ext);
/// N_{k_r/k}(x) = x^{(q^r-1)/(q-1)}, as an element of k.
FqElem norm(FqElem x, const ExtCtx& ext);
std::uint64_t dlog(FqElem x, const FieldCtx& ctx);

struct Partition {
    std::uint64_t index = 0;
    std::uint64_t total = 1;
};

/// Contiguous slice of the element codes of a field. Slices of one
/// partitioning are disjoint, cover the field, and concatenate (in index
/// order) to the single-slice order.
class ElementRange {
   public:
    class iterator {
       public:
        using value_type = FqElem;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::forward_iterator_tag;
        iterator() = default;
        iterator(std::uint64_t code, std::uint32_t field) : code_(code), field_(field) {}
        FqElem operator*() const noexcept { return {code_, field_}; }
        iterator& operator++() noexcept {
            ++code_;
            return *this;
        }
        iterator operator++(int) noexcept {
            iterator tmp = *this;
            ++code_;
            return tmp;
        }
        friend bool operator==(const iterator&, const iterator&) = default;

       private:
        std::uint64_t code_ = 0;
        std::uint32_t field_ = 0;
    };

    ElementRange(std::uint64_t lo, std::uint64_t hi, std::uint32_t field) : lo_(lo), hi_(hi), field_(field) {}
    iterator begin() const noexcept { return {lo_, field_}; }
    iterator end() const noexcept { return {hi_, field_}; }
    std::uint64_t size() const noexcept { return hi_ - lo_; }
    std::uint64_t first_code() const noexcept { return lo_; }

   private:
    std::uint64_t lo_, hi_;
    std::uint32_t field_;
};

ElementRange enumerate(const Field& field, Partition part = {});

}  // namespace fqs

#endif
