/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const approx_vs_exact: (a: number, b: number, c: bigint) => [number, number];
export const circular_cut_vector: (a: number, b: number) => [number, number];
export const nae_profile: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
