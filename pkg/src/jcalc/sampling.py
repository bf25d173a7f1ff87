"""Random words, automorphisms and filtered endomorphisms for property checks.

All generators take an explicit ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random

from .magnus import lyndon_bracket_word, lyndon_words
from .nilpotent import AutNk
from .words import (
    Endomorphism, ReducedWord, boundary_word, commutator, compose, generator, identity,
    invert, left_normed, multiply, power,
)


def random_word(rng: random.Random, rank: int, max_len: int, min_len: int = 0) -> ReducedWord:
    length = rng.randint(min_len, max_len)
    code = []
    while len(code) < length:
        a = rng.choice([1, -1]) * rng.randint(1, rank)
        if code and code[-1] == -a:
            continue
        code.append(a)
    return ReducedWord(rank, code)


def nielsen_moves(rank: int) -> list[tuple[Endomorphism, Endomorphism]]:
    """Elementary Nielsen automorphisms paired with their inverses."""
    out = []
    ident = [generator(rank, i) for i in range(1, rank + 1)]
    for i in range(rank):
        imgs = list(ident)
        imgs[i] = invert(ident[i])
        out.append((Endomorphism(imgs), Endomorphism(imgs)))
        for j in range(rank):
            if i == j:
                continue
            if i < j:
                imgs = list(ident)
                imgs[i], imgs[j] = ident[j], ident[i]
                out.append((Endomorphism(imgs), Endomorphism(imgs)))
            for e in (1, -1):
                fwd = list(ident)
                fwd[i] = multiply(ident[i], power(ident[j], e))
                back = list(ident)
                back[i] = multiply(ident[i], power(ident[j], -e))
                out.append((Endomorphism(fwd), Endomorphism(back)))
    return out


def random_automorphism(rng: random.Random, rank: int, length: int) -> tuple[Endomorphism, Endomorphism]:
    """A product of ``length`` Nielsen moves and its inverse."""
    moves = nielsen_moves(rank)
    phi, inv = identity(rank), identity(rank)
    for _ in range(length):
        f, b = rng.choice(moves)
        phi = compose(phi, f)
        inv = compose(b, inv)
    return phi, inv


def random_commutator(rng: random.Random, rank: int, weight: int, max_len: int = 2) -> ReducedWord:
    """A left-normed commutator of ``weight`` random nonempty words (lies in Gamma^weight)."""
    return left_normed([random_word(rng, rank, max_len, 1) for _ in range(weight)])


def random_gamma(rng: random.Random, rank: int, k: int, factors: int = 2, max_len: int = 2) -> ReducedWord:
    """A random element of Gamma^k: product of conjugated weight-k commutators."""
    out = ReducedWord(rank)
    for _ in range(factors):
        c = random_commutator(rng, rank, k, max_len)
        if rng.random() < 0.5:
            c = invert(c)
        u = random_word(rng, rank, 2)
        out = multiply(out, multiply(multiply(u, c), invert(u)))
    return out


def insertion(rank: int, i: int, c: ReducedWord) -> Endomorphism:
    """``x_i -> x_i c``, other generators fixed."""
    imgs = [generator(rank, j) for j in range(1, rank + 1)]
    imgs[i - 1] = multiply(imgs[i - 1], c)
    return Endomorphism(imgs)


def random_level_k(rng: random.Random, rank: int, k: int, lyndon_only: bool = False) -> Endomorphism:
    """A random endomorphism in filtration level k: ``x_i -> x_i c_i`` with c_i in Gamma^k."""
    imgs = []
    for i in range(1, rank + 1):
        if lyndon_only:
            c = ReducedWord(rank)
            for _ in range(rng.randint(0, 2)):
                u = rng.choice(lyndon_words(rank, rng.randint(k, k + 1)))
                c = multiply(c, power(lyndon_bracket_word(u, rank), rng.choice([1, -1])))
        else:
            c = random_gamma(rng, rank, k, rng.randint(0, 2))
        imgs.append(multiply(generator(rank, i), c))
    return Endomorphism(imgs)


def random_autnk(rng: random.Random, rank: int, k: int, moves: int = 3) -> AutNk:
    """Random unimodular action on H_1 plus random degree-2 corrections."""
    phi, _ = random_automorphism(rng, rank, moves)
    imgs = list(phi.images)
    for i in range(rank):
        a, b = rng.sample(range(1, rank + 1), 2) if rank > 1 else (1, 1)
        corr = power(commutator(generator(rank, a), generator(rank, b)), rng.randint(-2, 2))
        if k > 3 and rng.random() < 0.5:
            corr = multiply(corr, random_commutator(rng, rank, 3, 1))
        imgs[i] = multiply(imgs[i], corr)
    return AutNk(Endomorphism(imgs), k)


def zeta_fixing_moves(g: int) -> list[Endomorphism]:
    """Automorphisms of F_2g fixing the boundary word exactly (genus 1 transvections, conjugation by zeta)."""
    rank = 2 * g
    zeta = boundary_word(g)
    out = []
    for i in range(1, g + 1):
        a, b = generator(rank, i), generator(rank, g + i)
        for e in (1, -1):
            imgs = [generator(rank, j) for j in range(1, rank + 1)]
            imgs[i - 1] = multiply(a, power(b, e))
            out.append(Endomorphism(imgs))
            imgs = [generator(rank, j) for j in range(1, rank + 1)]
            imgs[g + i - 1] = multiply(b, power(a, e))
            out.append(Endomorphism(imgs))
    for e in (1, -1):
        z = power(zeta, e)
        out.append(Endomorphism([multiply(multiply(z, generator(rank, j)), invert(z))
                                 for j in range(1, rank + 1)]))
    return out


def random_zeta_certified(rng: random.Random, g: int, k: int, moves: int = 3) -> AutNk:
    """Product of zeta-fixing automorphisms, then perturbations by Gamma^(k+1) elements."""
    rank = 2 * g
    phi = identity(rank)
    pool = zeta_fixing_moves(g)
    for _ in range(moves):
        phi = compose(phi, rng.choice(pool))
    imgs = [multiply(w, random_gamma(rng, rank, k + 1, rng.randint(0, 1), 1)) for w in phi.images]
    return AutNk(Endomorphism(imgs), k)
