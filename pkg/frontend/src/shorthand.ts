/**
 * Render slot templates in the benchmark's shorthand for the synset panel:
 * `[token]` marks an optional token, ` | ` separates alternatives. Matches
 * the server's TSV export rendering so annotators see the same text in both
 * places.
 */

import type { SlotJson, TokenJson } from './types.js';

export function formatSlotShorthand(slot: SlotJson, tokens: TokenJson[]): string {
  return slot
    .map((alternative) =>
      alternative
        .map((st) => {
          const token = tokens[st.token_index];
          const text = token ? token.text : `#${st.token_index}`;
          return st.optional ? `[${text}]` : text;
        })
        .join(' ')
    )
    .join(' | ');
}
