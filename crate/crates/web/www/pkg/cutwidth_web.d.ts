/* tslint:disable */
/* eslint-disable */

/**
 * A random semi-complete digraph with the approximation next to the exact
 * cutwidth and OLA cost.
 */
export function approx_vs_exact(n: number, p_sym: number, seed: bigint): string;

/**
 * Cut vector of the sorted ordering of a circular tournament.
 */
export function circular_cut_vector(t: number, x: number): string;

/**
 * The extremal profile for a formula and, when one exists, the cut vector
 * of the ordering built from a not-all-equal satisfying assignment.
 */
export function nae_profile(cnf: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly approx_vs_exact: (a: number, b: number, c: bigint) => [number, number];
    readonly circular_cut_vector: (a: number, b: number) => [number, number];
    readonly nae_profile: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
