//! Registry of check identifiers with their statements and algorithms.

pub struct CheckDef {
    pub id: &'static str,
    pub statement: &'static str,
    pub algorithm: &'static str,
}

macro_rules! defs {
    ($( $id:literal => $stmt:literal, $alg:literal; )*) => {
        pub static CHECKS: &[CheckDef] = &[ $( CheckDef { id: $id, statement: $stmt, algorithm: $alg }, )* ];
    };
}

defs! {
    "instance.domain" =>
        "The scalar domain is a field or a quaternion division algebra given by a monic irreducible modulus or by structure constants.",
        "Build the domain from the [domain] block. An irreducible modulus is confirmed by factoring over the prime field; quaternion parameters are confirmed by the norm form having no nontrivial zero.";
    "instance.involution" =>
        "σ is an involutory anti-automorphism of the domain.",
        "Apply σ to every basis product and confirm σ(xy) = σ(y)σ(x) and σ² = 1 on basis elements.";
    "instance.involutory-set" =>
        "K₀ is an additive subgroup with σ-traces x + x^σ in K₀, x^σ K₀ x ⊆ K₀ and 1 ∈ K₀.",
        "Check 1 ∈ K₀, that K₀ is fixed by σ, that traces of basis elements lie in K₀, and that x^σ k x ∈ K₀ for basis elements x and k.";
    "instance.anisotropy" =>
        "The pseudo-quadratic form π̄ on the base space is anisotropic: π̄(x) ∈ K₀ only for x = 0.",
        "Enumerate all nonzero vectors when finite. Otherwise evaluate π̄ on the sample and, when a reduction to a norm form is available, certify anisotropy through it.";
    "instance.jordan-closed" =>
        "J is Jordan closed: aba ∈ J for all a, b ∈ J.",
        "Compute aba for basis elements a, b and the polarization abc + cba for pairs of basis elements, and test membership in J. A failure reports the offending triple.";
    "form.gram-skew-hermitian" =>
        "The sesquilinear form g is σ-skew-hermitian: g(w,z)^σ = −g(z,w).",
        "Evaluate g on all pairs of unit vectors and compare g(eᵢ,eⱼ)^σ with −g(eⱼ,eᵢ).";
    "form.pi-order-independent" =>
        "π̄(x) modulo K₀ does not depend on the chosen ordered basis used to evaluate the diagonal part.",
        "Evaluate π̄ on each vector with the basis order and its reverse, and confirm that the difference lies in K₀.";
    "form.isotropic-lines" =>
        "The extended form has Witt index one: the isotropic one-spaces are (1,0,0)K and (r,x,1)K with r + π̄(x) ∈ K₀.",
        "Enumerate all one-spaces when finite and compare the isotropic ones with the predicted set; otherwise test the prediction on random vectors.";
    "transvection.composition" =>
        "The root elements compose as α(v,t)α(w,u) = α(v+w, t+u+f(v,w)).",
        "Multiply the matrices α for every pair of span parameters and compare with α at the composed parameter.";
    "transvection.preserves-form" =>
        "Every root element preserves the pseudo-quadratic form on the extended space.",
        "For each span matrix of A and B, confirm that π(zg) − π(z) lies in K₀ and that g preserves the sesquilinear form on basis vectors.";
    "transvection.beta-conjugate" =>
        "The opposite root elements are the conjugates β = ω⁻¹αω of the root elements.",
        "Compare β(t,v) with ω⁻¹α(v,t)ω for every span parameter.";
    "orth.alpha-additive" =>
        "The maps α_v on the orthogonal space satisfy α_v α_w = α_(v+w).",
        "Multiply α_v and α_w for all pairs of vectors when finite, or of unit vectors otherwise.";
    "orth.preserves-form" =>
        "The root elements preserve the quadratic form Q on V.",
        "Evaluate Q on unit vectors and their pairwise sums before and after each span matrix of A and B.";
    "action.degree" =>
        "G acts cubically on V: [V,A,A,A] = 0 while [V,G,G,G] ≠ 0.",
        "Compute the commutator series of V under A and B and report whether the action is trivial, quadratic, cubic or of higher degree, with the vector that witnesses the last nonzero step.";
    "action.nilpotency" =>
        "[V,A,A,A] = 0 = [V,B,B,B] for a cubic action and [V,A,A] = 0 = [V,B,B] for a quadratic one.",
        "Iterate [W,X] starting from W = V with the span matrices of X = A and X = B, and require the subspace to vanish after the expected number of steps.";
    "normal-form" =>
        "One may assume [V,G] = V and C_V(G) = 0.",
        "Iterate W ↦ [W,G] until stable, then quotient by the largest G-fixed subspace, and induce A and B on the resulting section.";
    "a0.reference" =>
        "A₀ = C_A([V,A]) is nontrivial and contains a reference element e whose partner gives μ = μ_(e⁻¹).",
        "Compute A₀ as the elements of A centralizing [V,A], pick e as the first nontrivial element and build μ from b(e⁻¹).";
    "decomp.va-complement" =>
        "V = C_V(A) ⊕ [V,B].",
        "Compare dim(C_V(A) + [V,B]) with dim V and confirm the intersection is zero.";
    "decomp.cva-is-va0" =>
        "C_V(A) = [V,A₀] = [V,a] for every a ∈ A₀#.",
        "Compute [V,A₀] from the A₀ basis and [V,a] for each sampled nontrivial a ∈ A₀ and compare with C_V(A).";
    "decomp.va-is-centralizer" =>
        "[V,A] = C_V(a) for every a ∈ A₀#.",
        "Compute the fixed space of each sampled nontrivial a ∈ A₀ and compare with [V,A].";
    "decomp.cva-is-vaa" =>
        "C_V(A) = [V,A,A] when A is not abelian.",
        "Compute [[V,A],A] from span matrices. When A is abelian only the containment in C_V(A) is required.";
    "decomp.intersection-is-cvg0" =>
        "[V,A] ∩ [V,B] = C_V(G₀).",
        "Intersect [V,A] with [V,B] and compare with the joint fixed space of the A₀ and B₀ bases.";
    "decomp.va-splits" =>
        "[V,A] = C_V(A) ⊕ C_V(G₀).",
        "Compare C_V(A) + C_V(G₀) with [V,A] and confirm the intersection is zero.";
    "root-subgroup.centralizer-of-vector" =>
        "For v ∈ C_V(G₀), C_A(v) is a root subgroup: its nontrivial partners together with 1 form a subgroup.",
        "Collect the elements of A fixing v and check that products of their partners are the identity, already in the set, or partners of elements fixing v. Sampled sets use eight elements.";
    "root-subgroup.quotient-centralizer" =>
        "For a subspace W of C_V(G₀), C_A(V/(W + C_V(A))) is a root subgroup.",
        "Collect the elements g of A with V(g − 1) ⊆ W + C_V(A) and test closure of their partners as for the vector centralizer.";
    "rank-one.partners" =>
        "For every a ∈ A# there is a unique b(a) ∈ B# with A^(b(a)) = B^a, and a(b(a)) = a.",
        "Solve for b(a) by linear algebra on the parameters of B, then solve back for a(b(a)) and compare with a.";
    "rank-one.mu-swaps" =>
        "μ_a = b(a)ab(a) interchanges A and B.",
        "Conjugate the span matrices of A by μ_a and confirm the results lie in B, and the reverse.";
    "rank-one.mu-unique" =>
        "μ_a is the only element of BaB interchanging A and B.",
        "For up to three elements a, enumerate x a y for x, y ∈ B (or for a sample of B when infinite) and confirm that μ_a is the only one that swaps A and B. Skipped when |B| exceeds 32.";
    "rank-one.special" =>
        "G is special when b(a⁻¹) = b(a)⁻¹ for all a ∈ A#.",
        "Compare b(a⁻¹) with b(a)⁻¹ and report whether G is special.";
    "rank-one.a0-special" =>
        "b(a) ∈ B₀ and b(a⁻¹) = b(a)⁻¹ for a ∈ A₀#.",
        "For each sampled nontrivial a ∈ A₀ compute b(a) and b(a⁻¹) and test membership in B₀ and inversion.";
    "rank-one.a0-bounds" =>
        "A′ ≤ A₀ ≤ Z(A).",
        "Confirm that commutators of sampled elements with generators lie in A₀ and that the A₀ basis commutes with every generator.";
    "rank-one.a0-quadratic" =>
        "A₀ and B₀ act quadratically on V.",
        "Compute [V,X,X] from the bases of X = A₀ and X = B₀ and require it to vanish.";
    "rank-one.characteristic" =>
        "A₀ and A/A₀ are elementary abelian p-groups in characteristic p and torsion-free in characteristic 0.",
        "Raise sampled elements to the p-th power and test membership in A₀ (identity for A₀). Over ℚ confirm aᵏ ≠ 1 for k up to 4.";
    "rank-one.abelian-exponent" =>
        "If A is abelian, then the characteristic is 2 and A has exponent 2.",
        "When A is abelian with A₀ ≠ 1, check the characteristic and that a² = 1 for sampled elements.";
    "orth.rank-one-partner" =>
        "On the orthogonal instance α_v has a partner exactly when q(v) ≠ 0.",
        "Enumerate all nontrivial α_v, search for a partner in B and compare its existence with q(v) ≠ 0.";
    "orth.a0-closed-form" =>
        "A₀ = {α_v : v ∈ Def(q)}.",
        "Build the set of α_v for v in the defect and compare it with the enumerated A₀.";
    "rho.h-n-is-n" =>
        "ρ(h_n) = n for h_n = h_(eⁿ).",
        "Compute ρ(h_n) on C_V(A) for small n and compare with n times the identity.";
    "rho.mu-squared" =>
        "μ² acts as −1 on C_V(A) and h_(e⁻¹) = μ².",
        "Compute ρ(μ²) and h_(e⁻¹) directly.";
    "rho.a0-formula" =>
        "For a ∈ A₀ and v ∈ C_V(A), vρ(h_a) = [vμ,a].",
        "Evaluate both sides on a basis of C_V(A) for each sampled nontrivial a ∈ A₀.";
    "rho.additive-on-a0" =>
        "ρ(h_(ab)) = ρ(h_a) + ρ(h_b) for a, b ∈ A₀.",
        "Compare both sides on pairs of A₀ basis elements.";
    "rho.hua-expansion" =>
        "vh_a = vμ + [vμ,a] + [vμ,a,b(a)⁻¹] for v ∈ C_V(A).",
        "Evaluate the expansion on a basis of C_V(A) for each sampled a.";
    "f.biadditive" =>
        "f(a,bc) = f(a,b) + f(a,c) and f(bc,a) = f(b,a) + f(c,a).",
        "Evaluate f on triples drawn from the pair list.";
    "f.equivariant" =>
        "f(a,b^h) = f(a,b)ρ(h) and f(a^h,b) = ρ(h^(−μ))f(a,b) for h ∈ H₀.",
        "For Hua elements h = h_c with c ∈ A₀, compare f(a^h,b^h) with ρ(μh⁻¹μ⁻¹)f(a,b)ρ(h) on up to 24 pairs.";
    "f.kernels" =>
        "f(a,b) = 0 when a ∈ C_A(V/C_V(A)) or b ∈ C_A([V,A]).",
        "Compute both centralizers and evaluate f against sampled partners.";
    "f.commutator" =>
        "f(a,b) − f(b,a) = ρ(h_[a,b]).",
        "Evaluate both sides on the pair list.";
    "f.square" =>
        "ρ(h_(a²)) = 2ρ(h_a) + f(a,a); in characteristic 2, f(a,a) = ρ(h_(a²)).",
        "Compare ρ(h_(a²)) with 2ρ(h_a) + f(a,a) for sampled a.";
    "f.hua-difference" =>
        "ρ(h_(ab)) = ρ(h_a) + ρ(h_b) + f(a,b).",
        "Evaluate both sides on the pair list.";
    "f.values-in-s" =>
        "f takes values in S.",
        "Test membership of f(a,b) in the span of S for the pair list.";
    "f.diagonal-twice-h" =>
        "If the characteristic is not 2, then for each a there is b with ā = b̄ and f(ā,ā) = 2ρ(h_b).",
        "Construct b = ay with b² = b^(h_2) and compare f(a,a) with 2ρ(h_b).";
    "jordan.j-is-span" =>
        "J = {ρ(h_a) : a ∈ A₀} is an additive group equal to its span.",
        "Collect the distinct values ρ(h_a) over A₀ and, when finite, compare their number with the size of the span.";
    "jordan.closed" =>
        "J is closed under (x,y) ↦ xyx.",
        "Compute xyx for basis elements and the polarization xyz + zyx for pairs, and test membership in J.";
    "jordan.division" =>
        "Every nonzero element of J is invertible with inverse in J.",
        "Test invertibility and membership of inverses on all of J when finite, or on basis elements and combinations with a norm certificate when available.";
    "jordan.classify" =>
        "J is either commutative or noncommutative; if J is not commutative then R = S and R is a skewfield.",
        "Decide commutativity from basis products and cross-check with the Q-operator criterion; report the noncommuting pair as evidence.";
    "ring.closures" =>
        "J ⊆ R ⊆ S, where R is generated by ρ(H₀) and S by ρ(H).",
        "Close {1} under right multiplication by generators breadth first, recording one word per basis element, and confirm 1 ∈ R, J ⊆ R ⊆ S and that R is closed under one more round.";
    "ring.r-equals-s" =>
        "If J is not commutative, then R = S.",
        "Compare the dimensions of R and S. On the commutative branch the comparison is reported as information.";
    "ring.skewfield" =>
        "If the characteristic is not 2, then R is a skewfield.",
        "Search the elements of R (all when finite, otherwise a sample) for a nonzero non-unit. In characteristic 2 the outcome is reported as information.";
    "ring.hua-normalizes-r" =>
        "ρ(h_b) and ρ(h_b) + 1 normalize R for b ∈ A.",
        "For each sampled b, conjugate the basis of R by ρ(h_b) and by ρ(h_b) + 1 when invertible and test membership in R.";
    "ring.ideal-lemma" =>
        "If x ∈ S normalizes R and x + 1 is invertible and normalizes R, then xR + R is a ring and an ideal statement on R holds inside S.",
        "Run the ideal lemma check on x = ρ(h_b) inside the structure algebra of S for each sampled b, skipping those where the hypotheses fail.";
    "ring.j-equals-r-commutative" =>
        "If R = J, then R is a commutative skewfield.",
        "When R and J coincide, confirm R is commutative and has no nonzero non-units.";
    "ring.abelian-field" =>
        "If A is abelian, then R/𝔅(R) is a commutative field of characteristic 2.",
        "When A is abelian, confirm characteristic 2, commutativity of R and the absence of nonzero non-units.";
    "a0.centralizer-equalities" =>
        "C_A([V,A]) = A₀ = C_A(V/C_V(A)) unless R is a commutative field of characteristic 2.",
        "Compute both centralizers and compare them with A₀. When the hypothesis fails the outcome is reported as information.";
    "star.well-defined" =>
        "The map ρ(h) ↦ ρ(h^(−μ)) extends to a well-defined map * on R.",
        "Define * on the recorded basis through reversed words and confirm that every linear relation among the generators is respected.";
    "star.involutory" =>
        "* is involutory and 1* = 1.",
        "Square the matrix of * and apply it to 1.";
    "star.anti-automorphism" =>
        "* is an anti-automorphism: (xy)* = y*x*.",
        "Compare (bᵢbⱼ)* with bⱼ*bᵢ* on all pairs of basis elements.";
    "star.fixes-j" =>
        "ρ(h_a)* = ρ(h_a^(−μ)) = ρ(h_a) for a ∈ A₀.",
        "Evaluate ρ(h_a^(−μ)) directly and through * for sampled nontrivial a ∈ A₀.";
    "star.hua-compatible" =>
        "ρ(h^(−μ)) = ρ(h)* for all h ∈ H.",
        "For sampled b ∈ A compare ρ(h_b^(−μ)) with the image of ρ(h_b) under *.";
    "star.j-hermitian" =>
        "If the characteristic is not 2, then J = H(R,*).",
        "Compute the fixed space of * on R and compare it with J.";
    "star.j-ample" =>
        "In characteristic 2 with A not abelian, J is ample in R: r + r* and r*Jr lie in J.",
        "Run the ample-set test on J inside (R, *).";
    "hua.minus-mu-inverse" =>
        "ρ(h_a^(−μ)) = −ρ(h_(a⁻¹)).",
        "Compute both sides for sampled a.";
    "hua.conjugate-formula" =>
        "h_(a^h) = h^(−μ)h_a h for h ∈ H₀.",
        "Compare both matrices for Hua elements h and sampled a.";
    "hua.minus-mu-product-in-r" =>
        "ρ(h^(−μ)h) ∈ R for h ∈ H.",
        "Test membership in R for h = h_a with sampled a.";
    "abar.quotient-model" =>
        "Ā = A/A₀ is an abelian group.",
        "Model Ā by a linear projection, and confirm that it vanishes exactly on A₀, is additive on sampled pairs and that lifts of unit vectors project back.";
    "abar.well-defined" =>
        "ā·(Σρ(hᵢ)) = Σā^(hᵢ) is well-defined on Ā.",
        "Check that the action on Ā respects every linear relation among the generators of R and that conjugation by h_a agrees with the expansion of ρ(h_a).";
    "abar.module-axioms" =>
        "The action makes Ā an R-module.",
        "Confirm that 1 acts trivially and that ā·(bᵢbⱼ) = (ā·bᵢ)·bⱼ on all pairs of basis elements.";
    "abar.integer-scalars" =>
        "ρ(h_n) = n and ā^(h_n) = nā.",
        "For the first two n in 2..5 prime to the characteristic, compare the action of h_n on Ā with n times the identity and ρ(h_n) with n·1 in R.";
    "abar.divisibility" =>
        "If n and n − 1 are prime to the characteristic, then each ā has a representative b with bⁿ = b^(h_n).",
        "For n = 2 build b = ay from x = a^(h_2)a⁻² ∈ A₀ and confirm b̄ = ā and b² = b^(h_2).";
    "phi.in-cvg0" =>
        "Φ(v,a) = [vμ,a] − vh_a lies in C_V(G₀).",
        "Evaluate Φ on a basis of C_V(A) for sampled a and test membership in C_V(G₀).";
    "phi.biadditive" =>
        "Φ is biadditive.",
        "Compare Φ(v,ab) with Φ(v,a) + Φ(v,b) on the pair list and Φ(v+w,a) with Φ(v,a) + Φ(w,a) on basis vectors.";
    "phi.hua-twist" =>
        "Φ(vh,a) = Φ(v,a^(h^(−μ))) for h ∈ H₀.",
        "Evaluate both sides on a basis of C_V(A) for Hua elements h and sampled a.";
    "phi.right-kernel" =>
        "C_A(V/C_V(A)) is the right kernel of Φ.",
        "For each sampled a decide whether Φ(·,a) vanishes on C_V(A) and compare with membership in C_A(V/C_V(A)).";
    "phi.semilinear" =>
        "Φ(v·r,ā) = Φ(v,ā·r*).",
        "For each recorded basis element r of R, basis vector v and sampled a, compare both sides.";
    "phi.isomorphism" =>
        "If C_V(A) = vR, then Φ(v,·) is an isomorphism from Ā onto Φ(V,A).",
        "Evaluate Φ(v,·) on lifts of a basis of Ā, and check rank and equality with span Φ(C_V(A),A). If C_V(A) ≠ vR the outcome is reported with the hypothesis noted.";
    "phi.nondegenerate" =>
        "If R = S and A is not abelian, then Φ(v,a) = 0 for all a forces v = 0.",
        "Compute the left kernel of the matrix of Φ(·,a) over a spanning set of A.";
    "xw.invariant" =>
        "X(W) = W + Wμ + Φ(W,A) is a G-submodule.",
        "Build X(W) for W = C_V(A), W = 0 and each simple summand, and test invariance under every generator.";
    "xw.intersections" =>
        "X(W) ∩ C_V(A) = W and X(W) ∩ C_V(B) = Wμ.",
        "Intersect subspaces and compare for each W.";
    "xw.commutator" =>
        "[X(W),A] = W + Φ(W,A) and X(W) ∩ C_V(G₀) = Φ(W,A).",
        "Compute the commutator space and intersection for each W.";
    "xw.direct" =>
        "X(W) is the direct sum of W, Wμ and Φ(W,A).",
        "Compare dim W + dim Wμ + dim Φ(W,A) with dim X(W).";
    "xw.irreducible-transfer" =>
        "W is an irreducible H-module iff X(W) is an irreducible G-module.",
        "Decide H-irreducibility of W and G-irreducibility of X(W) by testing whether every nonzero vector (or a sample) generates the whole module, and compare.";
    "xw.complete-reducibility" =>
        "V is completely reducible iff C_V(A) is completely reducible as an H-module.",
        "Assemble simple cyclic H-submodules of C_V(A) into a direct sum and verify that the X(Wᵢ) are irreducible and fill V exactly when the sum is all of C_V(A).";
    "xw.summands-isomorphic" =>
        "For a doubled module each summand X(Wᵢ) is isomorphic to the base module.",
        "Search for an invertible intertwiner between the generator matrices on X(Wᵢ) and those of the base module.";
    "pi-abar.well-defined" =>
        "π: Ā → R/J, b̄ ↦ ρ(h_b) + J is well-defined.",
        "Confirm ρ(h_(ab)) − ρ(h_b) ∈ J for a ∈ A₀ and sampled b.";
    "pi-abar.scalar" =>
        "π(b̄·r) ≡ r*π(b̄)r mod J.",
        "Compare both sides modulo J for basis elements r of R and sampled b.";
    "pi-abar.additive" =>
        "π(b̄ + c̄) ≡ π(b̄) + π(c̄) + f(b̄,c̄) mod J.",
        "Compare both sides modulo J on the pair list.";
    "pi-abar.anisotropic" =>
        "ρ(h_a) ∈ J iff a ∈ A₀, so π is anisotropic.",
        "Compare membership on sampled elements, then test the coordinate form on random vectors and transport it to the reference domain along ψ to obtain a certificate when possible.";
    "pi-abar.hermitian-iff-a0" =>
        "If the characteristic is not 2, then ρ(h_a) ∈ H(R,*) iff a ∈ A₀.",
        "Compare ρ(h_a)* = ρ(h_a) with membership in A₀ for sampled a.";
    "pi-abar.diagonal" =>
        "f(b̄,b̄) = ρ(h_b) − ρ(h_b)*.",
        "Evaluate both sides for sampled b.";
    "f.skew-hermitian" =>
        "f is *-skew-hermitian: f(b̄,ā) = −f(ā,b̄)*.",
        "Compare both sides on the pair list.";
    "f.sesquilinear" =>
        "f is *-sesquilinear: f(ā·r, b̄·s) = r*f(ā,b̄)s.",
        "Compare both sides for up to eight pairs and basis elements r, s of R.";
    "coords.unique" =>
        "Every w ∈ V is uniquely vr + Φ(v,ā) + vsμ with r, s ∈ R and ā ∈ Ā.",
        "Build the matrix of (r,ā,s) ↦ vr + Φ(v,ā) + vsμ and require full rank with 2·dim R + dim Ā = dim V.";
    "coords.mu" =>
        "(r,ā,s)μ = (−s,ā,r).",
        "Write μ in the coordinates and compare with the block matrix.";
    "coords.root-action" =>
        "(r,ā,s)b = (r + f(ā,b̄) + sρ(h_b), ā + b̄·s*, s).",
        "Write sampled b in the coordinates and compare with the predicted matrix.";
    "coords.scalar-commutes" =>
        "(r,ā,s)∘λ = (λ*r, ā·λ, λ*s) is a scalar multiplication commuting with G.",
        "Write ∘b for each basis element b of R as a matrix and confirm it commutes with the generators and μ.";
    "su.alpha-identification" =>
        "G = SU(π): each a ∈ A is the root element α(x(ā), ρ(h_a)).",
        "In the extended coordinates compare sampled a with α at the reconstructed parameter, after checking that the parameter is valid.";
    "su.beta-identification" =>
        "μ is the Weyl element ω and a^μ = β(ρ(h_a), x(ā)).",
        "Compare μ with ω and the conjugates a^μ with β in the extended coordinates.";
    "pi-v.preserved" =>
        "π([r,ā,s]) = s*r + ρ(h_a) + J is preserved by G.",
        "Write each generator and μ in the extended coordinates and confirm it preserves π.";
    "roundtrip.transvection-law" =>
        "The reconstructed pseudo-quadratic space reproduces the transvection laws.",
        "Rebuild the extended space from the reconstructed data and run its form and transvection checks.";
    "witt.index-one" =>
        "π is a pseudo-quadratic form of Witt index 1.",
        "Enumerate one-spaces when finite, otherwise compare the isotropy prediction on random vectors.";
    "quaternion.identification" =>
        "R is isomorphic to the reference domain via ψ.",
        "Extend ψ multiplicatively along recorded words and confirm it is a bijective ring homomorphism on the basis.";
    "star.matches-instance" =>
        "ψ carries * to the involution of the instance.",
        "Compare ψ(b*) with ψ(b)^σ for each basis element b of R.";
}

pub fn lookup(id: &str) -> Option<&'static CheckDef> {
    CHECKS.iter().find(|d| d.id == id)
}
