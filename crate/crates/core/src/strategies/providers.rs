//! Antecedent resources: one channel per antecedent formula, each played
//! against a provider agent that acts as ⊤ in that formula's game.

use crate::arena::{Agent, Ctx, Meter};
use crate::syntax::game::apply_labmove;
use crate::syntax::{Formula, Labmove, Player};

/// Provider turns offered per poll before giving up for the current turn.
pub const DEFAULT_POLL_LIMIT: usize = 4;

#[derive(Clone)]
pub struct Channel {
    pub game: Formula,
    pub current: Formula,
    pub position: Vec<Labmove>,
    pub provider: Box<dyn Agent>,
    /// The provider's own meter.
    pub meter: Meter,
}

impl std::fmt::Debug for Channel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Channel")
            .field("game", &self.game.to_string())
            .field("provider", &self.provider.name())
            .field("position", &self.position)
            .finish()
    }
}

impl Channel {
    pub fn new(game: Formula, provider: Box<dyn Agent>) -> Channel {
        Channel { current: game.clone(), game, position: Vec::new(), provider, meter: Meter::default() }
    }

    pub fn provider_name(&self) -> String {
        self.provider.name()
    }

    /// Plays `mv` as ⊥ in this channel; the machine is charged for it.
    pub fn machine_move(&mut self, mv: &str, machine: &mut Meter) -> Result<(), String> {
        let lm = Labmove::new(Player::Bottom, mv);
        self.current = apply_labmove(&self.current, &lm).map_err(|e| format!("own move {mv} in `{}`: {e}", self.game))?;
        self.position.push(lm);
        machine.own_move(mv);
        Ok(())
    }

    /// Offers the provider up to `limit` turns and returns its first move.
    /// Provider moves count toward the machine's background.
    pub fn poll(&mut self, limit: usize, machine: &mut Meter) -> Result<Option<String>, String> {
        for _ in 0..limit {
            machine.tick(1);
            self.meter.tick(1);
            let offered = {
                let mut ctx = Ctx {
                    role: Player::Top,
                    game: &self.game,
                    current: &self.current,
                    position: &self.position,
                    meter: &mut self.meter,
                };
                self.provider.act(&mut ctx).map_err(|e| e.to_string())?
            };
            if let Some(mv) = offered {
                let lm = Labmove::new(Player::Top, mv.clone());
                self.current = apply_labmove(&self.current, &lm)
                    .map_err(|e| format!("provider {} made illegal move {mv}: {e}", self.provider.name()))?;
                self.position.push(lm);
                machine.adversary_move(&mv);
                return Ok(Some(mv));
            }
        }
        Ok(None)
    }
}

/// The providers of a sequent's antecedent, indexed like the antecedent.
#[derive(Clone, Debug, Default)]
pub struct ProviderBundle {
    pub channels: Vec<Channel>,
    pub poll_limit: usize,
}

impl ProviderBundle {
    pub fn new() -> ProviderBundle {
        ProviderBundle { channels: Vec::new(), poll_limit: DEFAULT_POLL_LIMIT }
    }

    pub fn with(mut self, game: Formula, provider: Box<dyn Agent>) -> ProviderBundle {
        self.channels.push(Channel::new(game, provider));
        self
    }

    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    /// Duplicates channel `index`, history included, right after itself.
    pub fn replicate(&mut self, index: usize) -> Result<(), String> {
        let ch = self.channels.get(index).ok_or_else(|| format!("no channel {index}"))?.clone();
        self.channels.insert(index + 1, ch);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::{axiom_agent, Op};

    #[test]
    fn replicate_copies_history() {
        let mut b = ProviderBundle::new().with(Op::Successor.game(), Box::new(axiom_agent(Op::Successor)));
        let mut m = Meter::default();
        b.channels[0].machine_move("#11", &mut m).unwrap();
        b.replicate(0).unwrap();
        assert_eq!(b.channels[0].position, b.channels[1].position);
        assert_eq!(b.channels[1].poll(1, &mut m).unwrap(), Some("#100".to_string()));
        assert_eq!(b.channels[0].position.len(), 1);
        assert_eq!(m.background, 3);
    }
}
